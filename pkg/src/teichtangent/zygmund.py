"""Circle fields on the real line and finite-sample Zygmund quotients.

The circle and the line are identified by e^{i theta} = (x - i)/(x + i),
i.e. x = -cot(theta/2). A field u d/d theta becomes F d/dx with
F(x) = (x^2 + 1) u / 2; x = 0, 1, inf correspond to the points -1, -i, 1.

The quotient sup |F(x+t) + F(x-t) - 2F(x)| / |t| is only ever sampled on a
finite grid, so every number returned here is a lower bound for the Zygmund
norm. Nothing in this module decides membership in the Zygmund class.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridShapeError, NoInterpolationError
from .series import FourierField, SchlichtVariation, evaluate_field
from .structures import welding_derivative

DEFAULT_HALF_WIDTH = 50.0
DEFAULT_SPACING = 1.0 / 8.0


@dataclass(frozen=True, eq=False)
class LineFunction:
    """Samples F(x_i) of a real function on a finite grid of the line."""

    x: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if x.shape != v.shape or x.ndim != 1:
            raise ValueError("x and values must be 1-D arrays of equal length")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    def at(self, x0: float) -> float:
        i = int(np.argmin(np.abs(self.x - x0)))
        if abs(self.x[i] - x0) > 1e-9:
            raise NoInterpolationError(f"x={x0} is not a grid point")
        return float(self.values[i])

    def scaled(self, c: float) -> "LineFunction":
        return LineFunction(self.x, c * self.values)

    def normalization_diagnostics(self) -> dict:
        """F(0), F(1) and F/(x^2+1) at both grid ends; all should be near 0."""
        out = {}
        for key, x0 in (("F(0)", 0.0), ("F(1)", 1.0)):
            try:
                out[key] = self.at(x0)
            except NoInterpolationError:
                out[key] = None
        out["decay_left"] = float(self.values[0] / (self.x[0] ** 2 + 1))
        out["decay_right"] = float(self.values[-1] / (self.x[-1] ** 2 + 1))
        return out


@dataclass(frozen=True, eq=False)
class CircleSamples:
    """Values of a real circle field at the listed angles (radians in [0, 2 pi))."""

    theta: np.ndarray
    values: np.ndarray


def line_grid(half_width: float = DEFAULT_HALF_WIDTH, spacing: float = DEFAULT_SPACING) -> np.ndarray:
    """Uniform grid on [-L, L]; contains 0 and 1 whenever 1/spacing is an integer."""
    n = int(round(half_width / spacing))
    return spacing * np.arange(-n, n + 1, dtype=float)


def dyadic_offsets(spacing: float, half_width: float) -> np.ndarray:
    """{h, 2h, 4h, ...} up to L/2."""
    out = []
    t = spacing
    while t <= half_width / 2 + 1e-12:
        out.append(t)
        t *= 2
    return np.array(out)


def line_to_angle(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.mod(np.angle((x - 1j) / (x + 1j)), 2 * np.pi)


def cayley_to_line(u, x_grid=None) -> LineFunction:
    """F(x) = (x^2 + 1) u(e^{i theta(x)}) / 2.

    ``u`` is a FourierField, a callable of theta, or CircleSamples taken at
    exactly the angles theta(x_i).
    """
    x = line_grid() if x_grid is None else np.asarray(x_grid, dtype=float)
    theta = line_to_angle(x)
    if isinstance(u, FourierField):
        vals = evaluate_field(u, theta)
    elif isinstance(u, CircleSamples):
        if u.theta.shape != theta.shape or np.max(np.abs(np.exp(1j * u.theta) - np.exp(1j * theta))) > 1e-12:
            raise NoInterpolationError("circle samples are not at the images of the line grid")
        vals = np.asarray(u.values, dtype=float)
    else:
        vals = np.asarray(u(theta), dtype=float)
    return LineFunction(x, 0.5 * (x**2 + 1) * vals)


def cayley_to_circle(F: LineFunction) -> CircleSamples:
    """u = 2 F(x) / (x^2 + 1) at theta(x)."""
    return CircleSamples(line_to_angle(F.x), 2.0 * F.values / (F.x**2 + 1))


def _shifts(F: LineFunction, t_set) -> list[tuple[float, int]]:
    dx = np.diff(F.x)
    if dx.size == 0 or np.max(np.abs(dx - dx[0])) > 1e-9 * max(1.0, abs(dx[0])):
        raise GridShapeError("Zygmund quotients need a uniform grid")
    h = dx[0]
    out = []
    for t in np.atleast_1d(np.asarray(t_set, dtype=float)):
        s = int(round(t / h))
        if t <= 0 or abs(s * h - t) > 1e-9 * max(1.0, t):
            raise GridShapeError(f"offset t={t} is not a positive multiple of the spacing {h}")
        if 2 * s >= F.x.size:
            raise GridShapeError(f"offset t={t} is too wide for a grid of length {F.x[-1] - F.x[0]}")
        out.append((float(t), s))
    return out


def quotient_profile(F: LineFunction, t_set=None) -> dict[float, float]:
    """t -> max_x |F(x+t) + F(x-t) - 2F(x)| / t over the grid."""
    if t_set is None:
        t_set = dyadic_offsets(F.x[1] - F.x[0], (F.x[-1] - F.x[0]) / 2)
    v = F.values
    prof = {}
    for t, s in _shifts(F, t_set):
        d = v[2 * s:] + v[: -2 * s] - 2 * v[s:-s]
        prof[t] = float(np.max(np.abs(d)) / t)
    return prof


def zygmund_quotient(F: LineFunction, t_set=None) -> float:
    """Finite-sample Zygmund quotient; defaults to dyadic offsets up to half the half-width."""
    return max(quotient_profile(F, t_set).values(), default=0.0)


def three_point_normalize(u: FourierField) -> tuple[FourierField, np.ndarray]:
    """Add b + c e^{i theta} + conj(c) e^{-i theta} so the field vanishes at 1, -1, -i.

    Returns the normalized field and the quadratic (p2, p1, p0) that the
    change adds to F on the line.
    """
    if u.K < 1:
        raise ValueError("need K >= 1 to hold the sl(2,R) modes")
    u0, upi, u3 = evaluate_field(u, np.array([0.0, np.pi, 1.5 * np.pi]))
    b = -(u0 + upi) / 2
    cr = -(u0 - upi) / 4
    ci = (-u3 - b) / 2
    c = cr + 1j * ci
    coeffs = u.coeffs.copy()
    coeffs[u.K] += b
    coeffs[u.K + 1] += c
    coeffs[u.K - 1] += np.conj(c)
    quad = np.array([(b + 2 * cr) / 2, 2 * ci, (b - 2 * cr) / 2])
    return FourierField(u.K, coeffs), quad


def line_normalize(F: LineFunction) -> tuple[LineFunction, np.ndarray]:
    """Subtract a real quadratic fixed by F(0), F(1) and the mean end decay F/(x^2+1).

    Approximate: the leading coefficient is read off the finite grid ends.
    Returns the normalized function and the subtracted (p2, p1, p0).
    """
    alpha = 0.5 * (F.values[0] / (F.x[0] ** 2 + 1) + F.values[-1] / (F.x[-1] ** 2 + 1))
    f0, f1 = F.at(0.0), F.at(1.0)
    quad = np.array([alpha, f1 - f0 - alpha, f0])
    return LineFunction(F.x, F.values - np.polyval(quad, F.x)), quad


def zygmund_check_sequence(gamma: SchlichtVariation, x_grid=None, t_set=None) -> float:
    """Zygmund quotient of the field i sum conj(gamma_k) e^{ik theta} - i sum gamma_k e^{-ik theta}.

    The field is first three-point normalized on the circle, so the line
    function satisfies F(0) = F(1) = 0 exactly.
    """
    u, _ = three_point_normalize(welding_derivative(gamma))
    return zygmund_quotient(cayley_to_line(u, x_grid), t_set)
