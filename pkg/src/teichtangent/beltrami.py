"""Beltrami coefficients on the unit disc and their reflection to the exterior.

Only the direction of mu matters for tangent computations, so no bound
``|mu| < 1`` is imposed anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NoInterpolationError, OutsideDomainError
from .quadrature import PolarGrid

_NODE_TOL = 1e-12


@dataclass(frozen=True)
class QuadraticDifferential:
    """Polynomial phi(z) = h_0 + h_1 z + ... + h_M z^M."""

    h: tuple

    def __init__(self, h: Sequence[complex] = ()):
        object.__setattr__(self, "h", tuple(complex(x) for x in h))

    @property
    def degree(self) -> int:
        nz = [m for m, x in enumerate(self.h) if x != 0]
        return nz[-1] if nz else -1

    def coeff(self, m: int) -> complex:
        return self.h[m] if 0 <= m < len(self.h) else 0j

    def __call__(self, z):
        if not self.h:
            return np.zeros_like(np.asarray(z, dtype=complex))
        return np.polynomial.polynomial.polyval(z, np.array(self.h))


class BeltramiSpec:
    """Base class; subclasses implement ``_values`` on arrays of disc points."""

    label = "mu"

    def _values(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def on_grid(self, grid: PolarGrid) -> np.ndarray:
        """mu at every node of ``grid``, shape (nr, ntheta)."""
        return np.broadcast_to(self._values(grid.z), grid.z.shape).astype(complex)


@dataclass(frozen=True)
class Zero(BeltramiSpec):
    label = "zero"

    def _values(self, z):
        return np.zeros_like(z, dtype=complex)


@dataclass(frozen=True)
class Harmonic(BeltramiSpec):
    """mu = conj(phi(z)) (1 - |z|^2)^2."""

    phi: QuadraticDifferential

    @property
    def label(self):
        return f"harmonic{list(self.phi.h)}"

    def _values(self, z):
        return np.conj(self.phi(z)) * (1.0 - np.abs(z) ** 2) ** 2


@dataclass(frozen=True)
class ExampleFamily(BeltramiSpec):
    """mu = -n z^2 conj(z)^(n-1), n >= 3."""

    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise ValueError(f"example family needs an integer n >= 3, got {self.n}")

    @property
    def label(self):
        return f"example(n={self.n})"

    def _values(self, z):
        return -self.n * z**2 * np.conj(z) ** (self.n - 1)


@dataclass(frozen=True)
class Monomial(BeltramiSpec):
    """mu = c z^p conj(z)^q."""

    c: complex
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("monomial exponents must be nonnegative")

    @property
    def label(self):
        return f"monomial(c={self.c}, p={self.p}, q={self.q})"

    def _values(self, z):
        return self.c * z**self.p * np.conj(z) ** self.q


@dataclass(frozen=True, eq=False)
class Sampled(BeltramiSpec):
    """Values of mu at the nodes of a fixed PolarGrid. No interpolation."""

    grid: PolarGrid
    values: np.ndarray

    label = "sampled"

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex)
        if vals.shape != self.grid.z.shape:
            raise ValueError(f"sampled values must have shape {self.grid.z.shape}, got {vals.shape}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def on_grid(self, grid):
        if not grid.same_nodes(self.grid):
            raise NoInterpolationError(
                f"sampled mu lives on a ({self.grid.nr}, {self.grid.ntheta}) grid, "
                f"asked for ({grid.nr}, {grid.ntheta})"
            )
        return self.values

    def _values(self, z):
        z = np.asarray(z, dtype=complex)
        flat = z.ravel()
        i = np.argmin(np.abs(np.abs(flat)[:, None] - self.grid.r[None, :]), axis=1)
        j = np.rint(np.mod(np.angle(flat), 2 * np.pi) * self.grid.ntheta / (2 * np.pi)).astype(int)
        j %= self.grid.ntheta
        off = np.abs(self.grid.z[i, j] - flat)
        if np.any(off > _NODE_TOL):
            bad = flat[np.argmax(off)]
            raise NoInterpolationError(f"z={bad:.6g} is not a node of the sampling grid")
        return self.values[i, j].reshape(z.shape)


@dataclass(frozen=True)
class Combination(BeltramiSpec):
    """Finite complex-linear combination sum_j c_j mu_j."""

    terms: tuple

    @property
    def label(self):
        return " + ".join(f"({c})*{s.label}" for c, s in self.terms)

    def _values(self, z):
        out = np.zeros_like(np.asarray(z, dtype=complex))
        for c, spec in self.terms:
            out = out + c * spec._values(z)
        return out

    def on_grid(self, grid):
        out = np.zeros(grid.z.shape, dtype=complex)
        for c, spec in self.terms:
            out = out + c * spec.on_grid(grid)
        return out


def scale(spec: BeltramiSpec, c: complex) -> BeltramiSpec:
    """c * mu, kept in the same variant whenever the variant is closed under scaling."""
    c = complex(c)
    if isinstance(spec, Zero):
        return spec
    if isinstance(spec, Monomial):
        return Monomial(c * spec.c, spec.p, spec.q)
    if isinstance(spec, Harmonic):
        # c conj(phi) = conj(conj(c) phi)
        return Harmonic(QuadraticDifferential([np.conj(c) * h for h in spec.phi.h]))
    if isinstance(spec, Sampled):
        return Sampled(spec.grid, c * spec.values)
    if isinstance(spec, Combination):
        return Combination(tuple((c * a, s) for a, s in spec.terms))
    return Combination(((c, spec),))


def combine(*terms) -> Combination:
    """combine((alpha, mu1), (beta, mu2), ...) -> alpha mu1 + beta mu2 + ..."""
    return Combination(tuple((complex(c), s) for c, s in terms))


def evaluate_mu(spec: BeltramiSpec, z):
    """Pointwise mu(z) for |z| < 1 (scalar or array)."""
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) >= 1.0):
        raise OutsideDomainError("mu is defined on the open unit disc only")
    out = spec._values(zz)
    return complex(out) if np.ndim(out) == 0 else out


def reflect_mu(spec: BeltramiSpec, w):
    """Reflected coefficient on |w| > 1: mu~(1/conj(z)) = conj(mu(z)) z^2 / conj(z)^2."""
    ww = np.asarray(w, dtype=complex)
    if np.any(np.abs(ww) <= 1.0):
        raise OutsideDomainError("the reflection lives on |w| > 1")
    z = 1.0 / np.conj(ww)
    out = np.conj(spec._values(z)) * z**2 / np.conj(z) ** 2
    return complex(out) if np.ndim(out) == 0 else out
