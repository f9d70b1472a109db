"""Truncated series types for the two tangent-space models.

A tangent vector at the origin of universal Teichmuller space is carried
either by a real vector field u(e^{i theta}) d/d theta on the circle, stored
through its Fourier coefficients a_k with |k| <= K, or by the first
variations gamma_k = c_k'(0), 2 <= k <= K, of the coefficients of a
normalized schlicht function zeta (1 + c_2/zeta^2 + c_3/zeta^3 + ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DegenerateNormalizationError, InconsistentFieldError, TruncationError

DEFAULT_K = 32

# reality violations are measured relative to the largest coefficient
REALITY_TOL = 1e-10


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class FourierField:
    """Fourier coefficients a_k, |k| <= K, of a real circle field.

    ``coeffs[k + K]`` holds a_k. Indices beyond the truncation read as zero.
    """

    K: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.K < 0:
            raise TruncationError(f"truncation order must be nonnegative, got {self.K}")
        coeffs = _frozen(self.coeffs)
        if coeffs.shape != (2 * self.K + 1,):
            raise ValueError(f"expected {2 * self.K + 1} coefficients, got shape {coeffs.shape}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, K: int) -> "FourierField":
        return cls(K, np.zeros(2 * K + 1, dtype=complex))

    @classmethod
    def from_positive(cls, K: int, positive: Mapping[int, complex], a0: float = 0.0) -> "FourierField":
        """Build a real field from a_k, k >= 1; the negative modes are conjugates."""
        c = np.zeros(2 * K + 1, dtype=complex)
        c[K] = a0
        for k, val in positive.items():
            if not 1 <= k <= K:
                raise TruncationError(f"mode {k} outside 1..{K}")
            c[K + k] = val
            c[K - k] = np.conj(val)
        return cls(K, c)

    @classmethod
    def from_modes(cls, K: int, modes: Mapping[int, complex]) -> "FourierField":
        """Build a field from an explicit {k: a_k} map; no symmetry is imposed."""
        c = np.zeros(2 * K + 1, dtype=complex)
        for k, val in modes.items():
            if abs(k) > K:
                raise TruncationError(f"mode {k} outside truncation {K}")
            c[K + k] = val
        return cls(K, c)

    def __getitem__(self, k: int) -> complex:
        if abs(k) > self.K:
            return 0j
        return complex(self.coeffs[k + self.K])

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.K, self.K + 1)

    def positive(self, kmin: int = 2) -> np.ndarray:
        """a_k for kmin <= k <= K."""
        return self.coeffs[self.K + kmin:].copy()

    def reality_defect(self) -> float:
        return float(np.max(np.abs(self.coeffs[::-1] - np.conj(self.coeffs)), initial=0.0))

    def max_abs_diff(self, other: "FourierField") -> float:
        K = max(self.K, other.K)
        return max(abs(self[k] - other[k]) for k in range(-K, K + 1))

    def scaled(self, c: float) -> "FourierField":
        return FourierField(self.K, c * self.coeffs)

    def __add__(self, other: "FourierField") -> "FourierField":
        if other.K != self.K:
            raise TruncationError("fields have different truncation orders")
        return FourierField(self.K, self.coeffs + other.coeffs)

    def __repr__(self):
        nz = {int(k): complex(a) for k, a in zip(self.modes, self.coeffs) if a != 0}
        return f"FourierField(K={self.K}, nonzero={nz})"


@dataclass(frozen=True, eq=False)
class SchlichtVariation:
    """First variations gamma_k = c_k'(0) for 2 <= k <= K; ``gamma[k - 2]`` is gamma_k."""

    K: int
    gamma: np.ndarray

    def __post_init__(self):
        if self.K < 2:
            raise TruncationError(f"schlicht variations need K >= 2, got {self.K}")
        gamma = _frozen(self.gamma)
        if gamma.shape != (self.K - 1,):
            raise ValueError(f"expected {self.K - 1} coefficients, got shape {gamma.shape}")
        object.__setattr__(self, "gamma", gamma)

    @classmethod
    def zeros(cls, K: int) -> "SchlichtVariation":
        return cls(K, np.zeros(K - 1, dtype=complex))

    @classmethod
    def from_dict(cls, K: int, values: Mapping[int, complex]) -> "SchlichtVariation":
        g = np.zeros(K - 1, dtype=complex)
        for k, val in values.items():
            if not 2 <= k <= K:
                raise TruncationError(f"index {k} outside 2..{K}")
            g[k - 2] = val
        return cls(K, g)

    def __getitem__(self, k: int) -> complex:
        if k < 2 or k > self.K:
            return 0j
        return complex(self.gamma[k - 2])

    @property
    def indices(self) -> np.ndarray:
        return np.arange(2, self.K + 1)

    def max_abs_diff(self, other: "SchlichtVariation") -> float:
        K = max(self.K, other.K)
        return max(abs(self[k] - other[k]) for k in range(2, K + 1))

    def scaled(self, c: complex) -> "SchlichtVariation":
        return SchlichtVariation(self.K, c * self.gamma)

    def __repr__(self):
        nz = {int(k): complex(g) for k, g in zip(self.indices, self.gamma) if g != 0}
        return f"SchlichtVariation(K={self.K}, nonzero={nz})"


@dataclass(frozen=True)
class RawSchlichtCoefficients:
    """Coefficients of f(zeta) = zeta (a + b_1/zeta + b_2/zeta^2 + ...), i.e. the 0, 1, inf normalization."""

    a: complex
    b: Mapping[int, complex]


def fourier_from_samples(samples, K: int = DEFAULT_K) -> FourierField:
    """Discrete Fourier coefficients of a real field sampled at theta_j = 2 pi j / N.

    a_k = (1/N) sum_j u(theta_j) exp(-i k theta_j). This recovers a
    trigonometric polynomial of degree <= K exactly once N >= 4K + 2.
    """
    u = np.asarray(samples)
    if np.iscomplexobj(u):
        raise InconsistentFieldError("circle field samples must be real")
    u = u.astype(float)
    N = u.size
    if N < 4 * K + 2:
        raise TruncationError(f"{N} samples cannot resolve truncation K={K}; need N >= {4 * K + 2}")
    spec = np.fft.rfft(u) / N
    c = np.zeros(2 * K + 1, dtype=complex)
    c[K:] = spec[: K + 1]
    c[K] = c[K].real
    c[:K] = np.conj(spec[1: K + 1])[::-1]
    return FourierField(K, c)


def evaluate_field(f: FourierField, theta):
    """u(theta) = sum_{|k|<=K} a_k e^{i k theta}; scalar or array theta."""
    scale = max(1.0, float(np.max(np.abs(f.coeffs), initial=0.0)))
    if f.reality_defect() > REALITY_TOL * scale:
        raise InconsistentFieldError(
            f"reality constraint violated by {f.reality_defect():.3e}; field is not real"
        )
    th = np.asarray(theta, dtype=float)
    vals = np.exp(1j * np.multiply.outer(th, f.modes)) @ f.coeffs
    out = vals.real
    return float(out) if out.ndim == 0 else out


def sl2_normalize(f: FourierField) -> FourierField:
    """Kill the sl(2,R) modes k = -1, 0, 1."""
    c = f.coeffs.copy()
    lo, hi = max(f.K - 1, 0), min(f.K + 1, 2 * f.K)
    c[lo: hi + 1] = 0
    return FourierField(f.K, c)


def normalize_schlicht(raw: RawSchlichtCoefficients, K: int | None = None) -> np.ndarray:
    """Post-compose with w -> w/a - b_1/a; returns c_k = b_k / a for k = 2..K.

    Entry ``j`` of the result is c_{j+2}.
    """
    if raw.a == 0:
        raise DegenerateNormalizationError("leading coefficient a vanishes")
    if K is None:
        K = max([k for k in raw.b] + [2])
    return np.array([complex(raw.b.get(k, 0)) / raw.a for k in range(2, K + 1)], dtype=complex)
