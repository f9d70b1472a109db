"""Exact-arithmetic route to the tangent identity for harmonic Beltrami forms.

For mu = conj(phi) (1 - |z|^2)^2 two independent computations are carried
out over the Gaussian rationals (every double is a dyadic rational, so the
input coefficients convert without loss):

* schlicht side: solve v'' = t phi v to first order in t with
  v1 = 1 + O(t), v2 = z + O(t), expand zeta -> conj(v1)(1/conj(zeta)) /
  conj(v2)(1/conj(zeta)) as a series in 1/zeta, and read off c_k'(0);
* circle side: with Phi''' = phi, restrict 2 conj(Phi) z^2 - 2 Phi to
  |z| = 1, divide by i z and read off the Fourier coefficients.

The deformation parameter t is real throughout; the conjugations in the
schlicht route are not holomorphic in t.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy.polys.domains import QQ_I
from sympy.polys.ring_series import rs_mul, rs_series_inversion
from sympy.polys.rings import ring

from .beltrami import QuadraticDifferential
from .errors import AppendixInconsistencyError, NormalizationDefectError, TruncationError
from .series import DEFAULT_K, FourierField, SchlichtVariation
from .variation import harmonic_fourier_closed_form

ZRING, Z = ring("z", QQ_I)
TSRING, T, S = ring("t,s", QQ_I)


def gaussian(z: complex):
    z = complex(z)
    return QQ_I(Fraction(z.real), Fraction(z.imag))


def conj(a):
    return QQ_I(a.x, -a.y)


def _to_float(q) -> float:
    return float(Fraction(int(q.numerator), int(q.denominator)))


def to_complex(a) -> complex:
    return complex(_to_float(a.x), _to_float(a.y))


def _h(phi: QuadraticDifferential, m: int):
    return gaussian(phi.coeff(m))


def _check_degree(phi, K):
    if K < 2:
        raise TruncationError("need K >= 2")
    if phi.degree > K - 2:
        raise TruncationError(f"deg phi = {phi.degree} exceeds K - 2 = {K - 2}")


def phi_polynomial(phi: QuadraticDifferential):
    return sum((_h(phi, m) * Z**m for m in range(len(phi.h))), ZRING.zero)


@dataclass(frozen=True)
class FirstOrderODESolutions:
    """Order-t parts g1, g2 of v1 = 1 + t g1 + o(t) and v2 = z + t g2 + o(t)."""

    v1: object
    v2: object
    phi: QuadraticDifferential
    K: int

    def residuals(self):
        """(g1'' - phi, g2'' - z phi); both vanish identically."""
        p = phi_polynomial(self.phi)
        return self.v1.diff(Z).diff(Z) - p, self.v2.diff(Z).diff(Z) - Z * p


def ode_series_solutions(phi: QuadraticDifferential, K: int = DEFAULT_K) -> FirstOrderODESolutions:
    _check_degree(phi, K)
    g1 = ZRING.zero
    g2 = ZRING.zero
    for k in range(2, K + 1):
        h = _h(phi, k - 2)
        g1 += h * QQ_I(Fraction(1, k * (k - 1)), 0) * Z**k
        g2 += h * QQ_I(Fraction(1, k * (k + 1)), 0) * Z ** (k + 1)
    return FirstOrderODESolutions(g1, g2, phi, K)


def _reflect(poly):
    """p(z) -> conj(p(conj(s))): conjugate coefficients, variable renamed to s."""
    out = TSRING.zero
    for (e,), c in poly.terms():
        out += conj(c) * S**e
    return out


def aw_schlicht_variation_exact(phi: QuadraticDifferential, K: int = DEFAULT_K) -> dict:
    """{k: c_k'(0)} in exact Gaussian rationals, 2 <= k <= K."""
    sol = ode_series_solutions(phi, K)
    num = 1 + T * _reflect(sol.v1)
    # conj(v2)(s) = s (1 + t conj(g2)(s)/s); g2 starts at z^3
    g2_over_s = TSRING({(0, e - 1): conj(c) for (e,), c in sol.v2.terms()}) if sol.v2 else TSRING.zero
    den_inv = rs_series_inversion(1 + T * g2_over_s, T, 2)
    ratio = rs_mul(num, den_inv, T, 2)  # w = zeta * ratio, s = 1/zeta

    coeff = {(i, j): c for (i, j), c in ratio.terms()}
    zero = QQ_I.zero
    if coeff.get((0, 0), zero) != QQ_I.one or any(i == 0 and j > 0 for (i, j) in coeff):
        raise NormalizationDefectError("zeroth order of the expansion is not the identity")
    a_dot = coeff.get((1, 0), zero)
    b1_dot = coeff.get((1, 1), zero)
    if a_dot != zero or b1_dot != zero:
        raise NormalizationDefectError(
            f"first-order expansion carries a'(0) = {a_dot}, b_1'(0) = {b1_dot}"
        )
    cdot = {k: coeff.get((1, k), zero) for k in range(2, K + 1)}
    for k, val in cdot.items():
        expected = 2 * conj(_h(phi, k - 2)) * QQ_I(Fraction(1, k**3 - k), 0)
        if val != expected:
            raise AppendixInconsistencyError(f"c_{k}'(0) = {val}, closed form gives {expected}")
    return cdot


def aw_schlicht_variation(phi: QuadraticDifferential, K: int = DEFAULT_K) -> SchlichtVariation:
    exact = aw_schlicht_variation_exact(phi, K)
    return SchlichtVariation.from_dict(K, {k: to_complex(v) for k, v in exact.items()})


def triple_antiderivative(phi: QuadraticDifferential):
    """Phi with Phi''' = phi and vanishing quadratic part."""
    out = ZRING.zero
    for m in range(len(phi.h)):
        out += _h(phi, m) * QQ_I(Fraction(1, (m + 1) * (m + 2) * (m + 3)), 0) * Z ** (m + 3)
    return out


def ahlfors_boundary_field_exact(phi: QuadraticDifferential, K: int = DEFAULT_K) -> dict:
    """{k: a_k} exactly, |k| <= K, for u = (2 conj(Phi) z^2 - 2 Phi)/(i z) on |z| = 1."""
    _check_degree(phi, K)
    w_dot = {}
    for (j,), c in triple_antiderivative(phi).terms():
        # conj(Phi(z)) = sum conj(P_j) z^(-j) on the circle
        w_dot[2 - j] = w_dot.get(2 - j, QQ_I.zero) + 2 * conj(c)
        w_dot[j] = w_dot.get(j, QQ_I.zero) - 2 * c
    minus_i = QQ_I(0, -1)
    u = {e - 1: minus_i * c for e, c in w_dot.items()}
    out = {}
    for k in range(-K, K + 1):
        out[k] = u.get(k, QQ_I.zero)
    stray = [e for e, c in u.items() if abs(e) > K and c != QQ_I.zero]
    if stray:
        raise TruncationError(f"boundary field has modes {stray} beyond K = {K}")
    for k in range(2, K + 1):
        expected = 2 * QQ_I(0, 1) * _h(phi, k - 2) * QQ_I(Fraction(1, k**3 - k), 0)
        if out[k] != expected or out[-k] != conj(expected):
            raise AppendixInconsistencyError(f"a_{k} = {out[k]}, closed form gives {expected}")
    return out


def ahlfors_boundary_field(phi: QuadraticDifferential, K: int = DEFAULT_K) -> FourierField:
    exact = ahlfors_boundary_field_exact(phi, K)
    field = FourierField.from_modes(K, {k: to_complex(v) for k, v in exact.items()})
    closed = harmonic_fourier_closed_form(phi, K)
    if not (field.coeffs == closed.coeffs).all():
        raise AppendixInconsistencyError("boundary field differs from the harmonic closed form")
    return field


@dataclass(frozen=True)
class AppendixReport:
    K: int
    defects: dict
    max_defect: float
    exact_match: bool


def verify_appendix(phi: QuadraticDifferential, K: int = DEFAULT_K) -> AppendixReport:
    """Compare c_k'(0) (schlicht route) with i conj(a_k) (boundary route) for 2 <= k <= K."""
    cdot = aw_schlicht_variation_exact(phi, K)
    a = ahlfors_boundary_field_exact(phi, K)
    i = QQ_I(0, 1)
    diffs = {k: cdot[k] - i * conj(a[k]) for k in range(2, K + 1)}
    defects = {k: abs(to_complex(d)) for k, d in diffs.items()}
    return AppendixReport(
        K=K,
        defects=defects,
        max_defect=max(defects.values(), default=0.0),
        exact_match=all(d == QQ_I.zero for d in diffs.values()),
    )
