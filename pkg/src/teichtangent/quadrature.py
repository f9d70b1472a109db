"""Product quadrature on the open unit disc in polar coordinates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IntegrationDomainError

DEFAULT_NR = 64
DEFAULT_NTHETA = 256


@dataclass(frozen=True, eq=False)
class PolarGrid:
    """Gauss-Legendre in r on (0, 1) times the uniform rule in theta.

    The Jacobian r is folded into ``weights``, so integrating f over the disc
    is ``sum(weights * f(z))`` with ``z = r e^{i theta}`` on the node mesh.
    Arrays have shape (nr, ntheta).
    """

    nr: int = DEFAULT_NR
    ntheta: int = DEFAULT_NTHETA
    r: np.ndarray = field(init=False, repr=False)
    theta: np.ndarray = field(init=False, repr=False)
    z: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.nr < 1 or self.ntheta < 1:
            raise ValueError("grid sizes must be positive")
        x, w = np.polynomial.legendre.leggauss(self.nr)
        r = 0.5 * (x + 1.0)
        wr = 0.5 * w * r
        theta = 2.0 * np.pi * np.arange(self.ntheta) / self.ntheta
        z = np.outer(r, np.exp(1j * theta))
        weights = np.outer(wr, np.full(self.ntheta, 2.0 * np.pi / self.ntheta))
        for name, arr in (("r", r), ("theta", theta), ("z", z), ("weights", weights)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def refined(self, factor: int = 2) -> "PolarGrid":
        return PolarGrid(self.nr * factor, self.ntheta * factor)

    def same_nodes(self, other: "PolarGrid") -> bool:
        return self.nr == other.nr and self.ntheta == other.ntheta


def integrate_disc(f, grid: PolarGrid | None = None) -> complex:
    """Integrate f over the unit disc with respect to area measure dx dy.

    ``f`` is either a callable accepting an array of complex points (it is
    called once with ``grid.z``) or an array of values already sampled on
    ``grid.z``. Exact for z^p conj(z)^q with p + q <= 2 nr - 2 and
    |p - q| < ntheta.
    """
    grid = grid or PolarGrid()
    vals = f(grid.z) if callable(f) else f
    vals = np.broadcast_to(np.asarray(vals), grid.z.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise IntegrationDomainError(
            f"integrand not finite at node (i={i}, j={j}), z={complex(grid.z[i, j]):.6g}"
        )
    return complex(np.sum(grid.weights * vals))


def monomial_disc_integral(p: int, q: int) -> complex:
    """Closed form of the disc integral of z^p conj(z)^q."""
    if p < 0 or q < 0:
        raise ValueError("exponents must be nonnegative")
    return complex(math.pi / (p + 1)) if p == q else 0j
