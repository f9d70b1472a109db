"""Structures on the tangent space at the origin.

Complex structure (conjugate Fourier series), derivative of conformal
welding, the Weil-Petersson pairing in both models, and the first-order
variation of the period matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .beltrami import BeltramiSpec
from .errors import TruncationError
from .quadrature import PolarGrid
from .series import DEFAULT_K, FourierField, SchlichtVariation
from .variation import fourier_variation, schlicht_variation

SIGN_THEOREM1 = "theorem1"
SIGN_PAPER = "paper"


def hilbert_transform(f: FourierField) -> FourierField:
    """Conjugate series: a_k -> -i sgn(k) a_k."""
    sgn = np.sign(f.modes)
    return FourierField(f.K, -1j * sgn * f.coeffs)


def welding_derivative(gamma: SchlichtVariation) -> FourierField:
    """Field u = i sum conj(gamma_k) e^{ik theta} - i sum gamma_k e^{-ik theta}, k >= 2."""
    K = gamma.K
    c = np.zeros(2 * K + 1, dtype=complex)
    pos = 1j * np.conj(gamma.gamma)
    c[K + 2:] = pos
    c[:K - 1] = np.conj(pos)[::-1]
    return FourierField(K, c)


def welding_derivative_inverse(f: FourierField) -> SchlichtVariation:
    """gamma_k = i conj(a_k), k >= 2."""
    if f.K < 2:
        raise TruncationError("field has no modes k >= 2")
    return SchlichtVariation(f.K, 1j * np.conj(f.positive(2)))


def _weights(K):
    k = np.arange(2, K + 1)
    return (k**3 - k).astype(float)


def _weighted_re_inner(a, b, K):
    """Re sum a_k conj(b_k) (k^3 - k) from real products.

    Written out in real arithmetic so the rounding does not depend on which
    factor carries the i: the welded and schlicht forms then agree bitwise.
    """
    return float(np.sum((a.real * b.real + a.imag * b.imag) * _weights(K)))


def wp_pairing_fields(V: FourierField, W: FourierField, K: int | None = None) -> float:
    """g(V, W) = Re sum_{k=2}^{K} a_k conj(b_k) (k^3 - k)."""
    K = min(V.K, W.K) if K is None else K
    if K > min(V.K, W.K):
        raise TruncationError(f"K={K} exceeds the truncation of the fields")
    a = np.array([V[k] for k in range(2, K + 1)])
    b = np.array([W[k] for k in range(2, K + 1)])
    return _weighted_re_inner(a, b, K)


def wp_pairing_schlicht(
    gamma: SchlichtVariation,
    delta: SchlichtVariation,
    K: int | None = None,
    sign_convention: str = SIGN_THEOREM1,
) -> float:
    """Weil-Petersson pairing of two schlicht variations.

    The default sign makes this agree with ``wp_pairing_fields`` on the
    welded fields. ``sign_convention="paper"`` returns the opposite-sign form
    -Re sum conj(gamma_k) delta_k (k^3 - k), which is the negative.
    """
    K = min(gamma.K, delta.K) if K is None else K
    if K > min(gamma.K, delta.K):
        raise TruncationError(f"K={K} exceeds the truncation of the variations")
    g = np.array([gamma[k] for k in range(2, K + 1)])
    d = np.array([delta[k] for k in range(2, K + 1)])
    val = _weighted_re_inner(d, g, K)
    if sign_convention == SIGN_THEOREM1:
        return val
    if sign_convention == SIGN_PAPER:
        return -val
    raise ValueError(f"unknown sign convention {sign_convention!r}")


@dataclass(frozen=True, eq=False)
class PeriodVariationMatrix:
    """First-order period matrix entries Pi_rs, 1 <= r <= R, 1 <= s <= S.

    ``entries[r-1, s-1]`` uses the Fourier form t i sqrt(rs) a_{-(r+s)};
    ``cross_entries`` uses the schlicht form sqrt(rs) t gamma_{r+s}.
    """

    R: int
    S: int
    t: float
    entries: np.ndarray
    cross_entries: np.ndarray

    @property
    def discrepancy(self) -> float:
        return float(np.max(np.abs(self.entries - self.cross_entries), initial=0.0))

    def asymmetry(self) -> float:
        n = min(self.R, self.S)
        block = self.entries[:n, :n]
        return float(np.max(np.abs(block - block.T), initial=0.0))


def period_variation(
    mu: BeltramiSpec,
    t: float,
    R: int,
    S: int,
    K: int = DEFAULT_K,
    grid: PolarGrid | None = None,
) -> PeriodVariationMatrix:
    """Pi([t mu])_rs to first order in t, with sqrt(-rs) taken as i sqrt(rs)."""
    if R < 1 or S < 1:
        raise ValueError("R and S must be >= 1")
    if R + S > K:
        raise TruncationError(f"R + S = {R + S} exceeds truncation K = {K}")
    grid = grid or PolarGrid()
    field = fourier_variation(mu, K, grid)
    gamma = schlicht_variation(mu, K, grid)
    r = np.arange(1, R + 1)[:, None]
    s = np.arange(1, S + 1)[None, :]
    root = np.sqrt(r * s)
    a_neg = np.vectorize(lambda k: field[-k], otypes=[complex])(r + s)
    g = np.vectorize(lambda k: gamma[k], otypes=[complex])(r + s)
    entries = t * 1j * root * a_neg
    cross = root * t * g
    return PeriodVariationMatrix(R, S, float(t), entries.astype(complex), cross.astype(complex))
