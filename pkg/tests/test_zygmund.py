import numpy as np
import pytest
from hypothesis import given, strategies as st

from teichtangent.errors import GridShapeError
from teichtangent.series import FourierField, SchlichtVariation, evaluate_field
from teichtangent.zygmund import (
    CircleSamples,
    LineFunction,
    cayley_to_circle,
    cayley_to_line,
    dyadic_offsets,
    line_grid,
    line_normalize,
    line_to_angle,
    quotient_profile,
    three_point_normalize,
    zygmund_check_sequence,
    zygmund_quotient,
)

SINE = FourierField.from_positive(4, {2: -1j})  # u = 2 sin 2 theta


def test_zero_transfers():
    assert np.all(cayley_to_line(FourierField.zeros(3)).values == 0)
    x = line_grid(4, 0.5)
    assert np.all(cayley_to_circle(LineFunction(x, np.zeros_like(x))).values == 0)


def test_special_points():
    assert np.exp(1j * line_to_angle(0.0)) == pytest.approx(-1)
    assert np.exp(1j * line_to_angle(1.0)) == pytest.approx(-1j)
    F = cayley_to_line(SINE, line_grid(4, 0.25))
    assert abs(F.at(0.0)) < 1e-15


def test_constant_on_line_to_circle():
    x = line_grid(5, 0.5)
    u = cayley_to_circle(LineFunction(x, x**2 + 1))
    assert np.allclose(u.values, 2.0)


def test_round_trip():
    x = line_grid(20, 0.125)
    F = cayley_to_line(SINE, x)
    u = cayley_to_circle(F)
    assert np.max(np.abs(u.values - evaluate_field(SINE, u.theta))) < 1e-12
    F2 = cayley_to_line(u, x)
    assert np.max(np.abs(F2.values - F.values)) < 1e-12


def test_callable_and_mismatched_samples():
    x = line_grid(3, 0.5)
    F = cayley_to_line(lambda th: 2 * np.sin(2 * th), x)
    assert np.allclose(F.values, cayley_to_line(SINE, x).values)
    from teichtangent.errors import NoInterpolationError

    with pytest.raises(NoInterpolationError):
        cayley_to_line(CircleSamples(np.zeros(3), np.zeros(3)), x)


def test_affine_and_quadratic_quotients():
    x = line_grid(10, 0.25)
    assert zygmund_quotient(LineFunction(x, 3 * x - 2), [0.25, 0.5, 2.0]) < 1e-13
    T = 2.0
    assert zygmund_quotient(LineFunction(x, x**2), [0.25, 1.0, T]) == pytest.approx(2 * T, rel=1e-14)


def test_grid_shape_errors():
    x = line_grid(4, 0.5)
    F = LineFunction(x, x**2)
    with pytest.raises(GridShapeError):
        zygmund_quotient(F, [0.3])
    with pytest.raises(GridShapeError):
        zygmund_quotient(LineFunction(np.array([0.0, 0.1, 0.5, 0.6]), np.zeros(4)), [0.1])
    with pytest.raises(GridShapeError):
        zygmund_quotient(F, [8.0])


def test_sine_estimate_grid_stable():
    g = SchlichtVariation.from_dict(4, {2: -1.0})
    est = [
        zygmund_check_sequence(g, line_grid(50, h), dyadic_offsets(h, 50)) for h in (1 / 8, 1 / 16, 1 / 32)
    ]
    assert all(np.isfinite(est)) and est[0] > 0
    assert abs(est[1] - est[0]) / est[1] < 0.05
    assert abs(est[2] - est[1]) / est[2] < 0.05


def test_zero_sequence():
    assert zygmund_check_sequence(SchlichtVariation.zeros(5)) == 0


@given(st.integers(-8, 8), st.integers(0, 2**32 - 1))
def test_homogeneity(e, seed):
    rng = np.random.default_rng(seed)
    x = line_grid(8, 0.25)
    F = LineFunction(x, rng.normal(size=x.size))
    c = 2.0**e * (-1) ** seed
    assert zygmund_quotient(F.scaled(c)) == abs(c) * zygmund_quotient(F)
    g = SchlichtVariation(4, rng.normal(size=3) + 1j * rng.normal(size=3))
    assert zygmund_check_sequence(g.scaled(2.0)) == 2 * zygmund_check_sequence(g)


@given(st.integers(0, 2**32 - 1))
def test_monotone_in_offsets_and_grid(seed):
    rng = np.random.default_rng(seed)
    x = line_grid(8, 0.25)
    F = LineFunction(x, rng.normal(size=x.size))
    assert zygmund_quotient(F, [0.25, 1.0]) <= zygmund_quotient(F, [0.25, 0.5, 1.0, 2.0])
    g = SchlichtVariation(5, rng.normal(size=4) + 1j * rng.normal(size=4))
    coarse = zygmund_check_sequence(g, line_grid(16, 0.5), [0.5, 1.0])
    fine = zygmund_check_sequence(g, line_grid(16, 0.25), [0.25, 0.5, 1.0])
    assert coarse <= fine


def test_three_point_normalization_is_exact():
    f = FourierField.from_positive(5, {1: 0.3 - 2j, 2: 1j, 4: 0.5}, a0=1.7)
    u, quad = three_point_normalize(f)
    F = cayley_to_line(u, line_grid(10, 0.125))
    assert abs(F.at(0.0)) < 1e-14 and abs(F.at(1.0)) < 1e-14
    assert np.array_equal(u.positive(2), f.positive(2))
    # the added modes are the quadratic on the line
    x = F.x
    Ff = cayley_to_line(f, x)
    assert np.max(np.abs(F.values - Ff.values - np.polyval(quad, x))) < 1e-9 * (1 + x**2).max()


def test_line_normalize_diagnostics():
    x = line_grid(50, 0.125)
    F = LineFunction(x, 2 * x**2 - x + 3 + np.sin(x))
    G, quad = line_normalize(F)
    d = G.normalization_diagnostics()
    assert abs(d["F(0)"]) < 1e-12 and abs(d["F(1)"]) < 1e-12
    assert quad[0] == pytest.approx(2, rel=1e-2)


def test_profile_keys():
    x = line_grid(8, 0.5)
    prof = quotient_profile(LineFunction(x, x**2))
    assert list(prof) == [0.5, 1.0, 2.0, 4.0]
