"""First variations of the two normalized solutions of the Beltrami equation.

For a direction mu on the disc:

* schlicht side: gamma_k = c_k'(0) = (1/pi) int_D mu(z) z^(k-2) dx dy, k >= 2;
* circle side: a_{-k} = -(i/pi) int_D mu(z) z^(k-2) dx dy, k >= 2, and
  a_k = conj(a_{-k}).

Both are computed as separate area quadratures. The pointwise derivatives
f'(zeta) (0, 1, inf normalization, exterior of the disc) and w'(zeta)
(+-1, -i normalization, reflected coefficient) are also available; the
latter is slow to converge on the circle and only serves as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .beltrami import BeltramiSpec, QuadraticDifferential
from .errors import BoundaryProximityError, SingularNodeError, TruncationError
from .quadrature import PolarGrid
from .series import DEFAULT_K, FourierField, SchlichtVariation

BOUNDARY_GUARD = 1e-3
_SINGULAR_TOL = 1e-14


def _check_k(K):
    if K < 2:
        raise TruncationError(f"need K >= 2, got {K}")


def _power_moments(weighted_mu: np.ndarray, z: np.ndarray, powers) -> np.ndarray:
    """sum over nodes of weighted_mu * z^j for each j in ``powers``."""
    return np.array([np.sum(weighted_mu * z**j) for j in powers], dtype=complex)


@dataclass(frozen=True)
class VariationPair:
    """The two faces of one tangent vector, plus the defect of c_k'(0) = i conj(a_k)."""

    fourier: FourierField
    schlicht: SchlichtVariation
    mu_label: str
    K: int
    residual: float


def schlicht_variation(mu: BeltramiSpec, K: int = DEFAULT_K, grid: PolarGrid | None = None) -> SchlichtVariation:
    """gamma_k = (1/pi) int_D mu z^(k-2), 2 <= k <= K."""
    _check_k(K)
    grid = grid or PolarGrid()
    wm = grid.weights * mu.on_grid(grid)
    return SchlichtVariation(K, _power_moments(wm, grid.z, range(K - 1)) / np.pi)


def fourier_variation(mu: BeltramiSpec, K: int = DEFAULT_K, grid: PolarGrid | None = None) -> FourierField:
    """sl2-normalized Fourier coefficients of the boundary field V[mu].

    a_{-k} = -(i/pi) int_D mu z^(k-2) for k >= 2; a_k = conj(a_{-k}).
    mu is infinitesimally trivial at truncation K exactly when all of these
    vanish.
    """
    _check_k(K)
    grid = grid or PolarGrid()
    vals = mu.on_grid(grid)
    neg = np.array(
        [np.sum(grid.weights * (-1j / np.pi) * vals * grid.z ** (k - 2)) for k in range(2, K + 1)],
        dtype=complex,
    )
    c = np.zeros(2 * K + 1, dtype=complex)
    c[K + 2:] = np.conj(neg)
    c[:K - 1] = neg[::-1]
    return FourierField(K, c)


def raw_coefficient_variation(mu: BeltramiSpec, K: int = DEFAULT_K, grid: PolarGrid | None = None):
    """(a'(0), {k: b_k'(0)}) for the 0, 1, inf normalized solution, 1 <= k <= K.

    a'(0) = (1/pi) int mu / (z (z - 1)) and b_k'(0) = (1/pi) int mu z^(k-2).
    The integrands have integrable poles at z = 0 (k = 1 and a') and z = 1;
    accuracy of a'(0) and b_1'(0) is therefore limited.
    """
    if K < 1:
        raise TruncationError(f"need K >= 1, got {K}")
    grid = grid or PolarGrid()
    z = grid.z
    closest = min(np.min(np.abs(z)), np.min(np.abs(z - 1)))
    if closest < _SINGULAR_TOL:
        raise SingularNodeError("a quadrature node sits on a pole at z = 0 or z = 1")
    wm = grid.weights * mu.on_grid(grid)
    a_dot = complex(np.sum(wm / (z * (z - 1))) / np.pi)
    b_dot = {k: complex(np.sum(wm * z ** (k - 2)) / np.pi) for k in range(1, K + 1)}
    return a_dot, b_dot


def f_dot(mu: BeltramiSpec, zeta: complex, grid: PolarGrid | None = None) -> complex:
    """-(zeta (zeta - 1)/pi) int_D mu / (z (z - 1) (z - zeta)) for |zeta| > 1 + guard."""
    if abs(zeta) <= 1 + BOUNDARY_GUARD:
        raise BoundaryProximityError(f"|zeta| = {abs(zeta):.6g} is within {BOUNDARY_GUARD} of the circle")
    grid = grid or PolarGrid()
    z = grid.z
    integral = np.sum(grid.weights * mu.on_grid(grid) / (z * (z - 1) * (z - zeta)))
    return complex(-zeta * (zeta - 1) / np.pi * integral)


def w_dot_mu(mu: BeltramiSpec, zeta, grid: PolarGrid | None = None):
    """Infinitesimal deformation w'[mu](zeta) fixing 1, -1 and -i.

    Sum of the direct integral over the disc and the contribution of the
    reflected coefficient, pulled back to the disc. ``zeta`` may be an array.
    On |zeta| = 1 the Cauchy kernel is nearly singular at the outer nodes and
    pointwise accuracy degrades.
    """
    grid = grid or PolarGrid()
    zeta_arr = np.asarray(zeta, dtype=complex)
    z = grid.z.ravel()
    wmu = (grid.weights * mu.on_grid(grid)).ravel()
    zb = np.conj(z)
    direct = wmu / ((z - 1) * (z + 1) * (z + 1j))
    reflected = np.conj(wmu) / ((zb - 1) * (zb + 1) * (zb - 1j))
    zs = zeta_arr.ravel()
    first = (1.0 / (z[None, :] - zs[:, None])) @ direct
    second = (1.0 / (1.0 - zs[:, None] * zb[None, :])) @ reflected
    pref = -(zs - 1) * (zs + 1) * (zs + 1j) / np.pi
    out = (pref * (first + 1j * second)).reshape(zeta_arr.shape)
    return complex(out) if out.ndim == 0 else out


def harmonic_fourier_closed_form(phi: QuadraticDifferential, K: int = DEFAULT_K) -> FourierField:
    """a_k = 2i h_{k-2} / (k^3 - k) for 2 <= k <= K, a_{-k} = conj(a_k)."""
    _check_k(K)
    c = np.zeros(2 * K + 1, dtype=complex)
    for k in range(2, K + 1):
        h = phi.coeff(k - 2)
        d = k**3 - k
        # componentwise so the division is correctly rounded
        a = complex(-2.0 * h.imag / d, 2.0 * h.real / d)
        c[K + k] = a
        c[K - k] = a.conjugate()
    return FourierField(K, c)


def verify_theorem1(mu: BeltramiSpec, K: int = DEFAULT_K, grid: PolarGrid | None = None) -> VariationPair:
    """Compute both faces independently and record max_k |gamma_k - i conj(a_k)|."""
    _check_k(K)
    grid = grid or PolarGrid()
    gamma = schlicht_variation(mu, K, grid)
    field = fourier_variation(mu, K, grid)
    residual = max(abs(gamma[k] - 1j * np.conj(field[k])) for k in range(2, K + 1))
    return VariationPair(field, gamma, mu.label, K, float(residual))
