"""Closed-form deformations for mu = -n z^2 conj(z)^(n-1).

For |t| < 1/n the map

    zeta (1 + t zeta^(1-n))^(-1)        on |zeta| >= 1,
    (1/zeta + t conj(zeta)^n)^(-1)      on |zeta| <= 1,

is quasiconformal with dilatation t mu in the disc, and its exterior branch
is already of the form zeta (1 + c_2/zeta^2 + ...).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .beltrami import ExampleFamily, evaluate_mu
from .errors import OutOfRangeError, StepTooLargeError, TruncationError
from .series import DEFAULT_K, FourierField, SchlichtVariation

INTERIOR_MARGIN = 1e-2
DEFAULT_STEP = 1e-5


@dataclass(frozen=True)
class ExampleMap:
    n: int
    t: complex

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise ValueError(f"n must be an integer >= 3, got {self.n}")
        if abs(self.t) >= 1.0 / self.n:
            raise OutOfRangeError(f"|t| = {abs(self.t):.6g} must be below 1/n = {1 / self.n:.6g}")

    def exterior(self, zeta):
        return zeta / (1.0 + self.t * zeta ** (1 - self.n))

    def interior(self, zeta):
        return 1.0 / (1.0 / zeta + self.t * np.conj(zeta) ** self.n)


def example_map_eval(m: ExampleMap, zeta: complex) -> complex:
    zeta = complex(zeta)
    if zeta == 0:
        return 0j
    if abs(zeta) >= 1:
        return complex(m.exterior(zeta))
    return complex(m.interior(zeta))


def branch_mismatch(m: ExampleMap, n_points: int = 64) -> float:
    """Largest gap between the two branches at n_points equally spaced points of |zeta| = 1."""
    zeta = np.exp(2j * np.pi * np.arange(n_points) / n_points)
    return float(np.max(np.abs(m.exterior(zeta) - m.interior(zeta))))


def example_expected_fourier(n: int, K: int = DEFAULT_K) -> FourierField:
    """a_{n-1} = -i, a_{1-n} = i, every other mode 0."""
    if n - 1 > K:
        raise TruncationError(f"mode n-1 = {n - 1} exceeds truncation K = {K}")
    return FourierField.from_positive(K, {n - 1: -1j})


def example_expected_cdot(n: int, K: int = DEFAULT_K) -> SchlichtVariation:
    """gamma_{n-1} = -1, every other gamma_k 0."""
    if n - 1 > K or n - 1 < 2:
        raise TruncationError(f"index n-1 = {n - 1} outside 2..{K}")
    return SchlichtVariation.from_dict(K, {n - 1: -1.0})


def dilatation_check(m: ExampleMap, z: complex, h: float = DEFAULT_STEP) -> float:
    """|w_zbar / w_z - t mu(z)| for the interior branch, by central differences.

    Wirtinger derivatives from f_x and f_y: w_z = (f_x - i f_y)/2,
    w_zbar = (f_x + i f_y)/2.
    """
    z = complex(z)
    if abs(z) >= 1 - INTERIOR_MARGIN:
        raise StepTooLargeError(f"|z| = {abs(z):.6g} must stay below {1 - INTERIOR_MARGIN}")
    if abs(z) + h >= 1 - INTERIOR_MARGIN / 2 or h <= 0:
        raise StepTooLargeError(f"stencil of half-width {h} leaves the disc at z = {z}")
    f = lambda p: example_map_eval(m, p)  # noqa: E731
    fx = (f(z + h) - f(z - h)) / (2 * h)
    fy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
    wz = 0.5 * (fx - 1j * fy)
    wzb = 0.5 * (fx + 1j * fy)
    return abs(wzb / wz - m.t * evaluate_mu(ExampleFamily(m.n), z))


def example_finite_t_coefficients(m: ExampleMap, K: int = DEFAULT_K) -> np.ndarray:
    """c_k(t) for k = 2..K of the exterior branch; entry j is c_{j+2}.

    The exterior branch is zeta / (1 + t s^(n-1)) with s = 1/zeta; the
    reciprocal series in s is built term by term.
    """
    if K < 2:
        raise TruncationError("need K >= 2")
    d = np.zeros(K + 1, dtype=complex)
    d[0] = 1.0
    if m.n - 1 <= K:
        d[m.n - 1] = m.t
    inv = np.zeros(K + 1, dtype=complex)
    inv[0] = 1.0
    for j in range(1, K + 1):
        inv[j] = -np.dot(d[1: j + 1], inv[j - 1:: -1][:j])
    return inv[2:]
