import numpy as np
import pytest
from hypothesis import given, strategies as st

from teichtangent.beltrami import (
    ExampleFamily,
    Harmonic,
    Monomial,
    QuadraticDifferential,
    Sampled,
    Zero,
    combine,
    evaluate_mu,
    reflect_mu,
    scale,
)
from teichtangent.errors import NoInterpolationError, OutsideDomainError
from teichtangent.quadrature import PolarGrid, integrate_disc, monomial_disc_integral

from conftest import complexes

SPECS = [
    Zero(),
    ExampleFamily(3),
    ExampleFamily(6),
    Harmonic(QuadraticDifferential([1, 0.5j, -0.25])),
    Monomial(1 - 2j, 2, 3),
]

disc_points = st.builds(
    lambda r, a: r * np.exp(1j * a), st.floats(1e-3, 0.99), st.floats(0, 2 * np.pi)
)


def test_pointwise_examples():
    assert evaluate_mu(Zero(), 0.3j) == 0
    assert evaluate_mu(ExampleFamily(3), 0.5) == pytest.approx(-3 / 16)
    assert evaluate_mu(Harmonic(QuadraticDifferential([1])), 0) == 1


def test_outside_disc():
    with pytest.raises(OutsideDomainError):
        evaluate_mu(ExampleFamily(3), 1.0)
    with pytest.raises(OutsideDomainError):
        reflect_mu(ExampleFamily(3), 0.5)


def test_example_family_needs_n_at_least_three():
    with pytest.raises(ValueError):
        ExampleFamily(2)


def test_reflection_examples():
    assert reflect_mu(Zero(), 2.5 - 1j) == 0
    w = 2.0
    z = 1 / np.conj(w)
    expected = np.conj(evaluate_mu(ExampleFamily(3), z)) * z**2 / np.conj(z) ** 2
    assert reflect_mu(ExampleFamily(3), w) == pytest.approx(expected, abs=1e-15)
    assert reflect_mu(ExampleFamily(3), w) == pytest.approx(-3 / 16)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.label)
@given(z=disc_points)
def test_reflection_preserves_modulus(spec, z):
    w = 1 / np.conj(z)
    assert abs(abs(reflect_mu(spec, w)) - abs(evaluate_mu(spec, z))) < 1e-12 * (1 + abs(evaluate_mu(spec, z)))


def test_harmonic_vanishes_at_boundary():
    phi = QuadraticDifferential([1, -2j, 0.5, 3])
    norm = sum(abs(h) for h in phi.h)
    for r in (0.9, 0.99, 0.999):
        z = r * np.exp(1j * np.linspace(0, 2 * np.pi, 17))
        assert np.all(np.abs(evaluate_mu(Harmonic(phi), z)) <= norm * (1 - r**2) ** 2 + 1e-15)


@pytest.mark.parametrize("p,q,k", [(0, 0, 2), (0, 1, 3), (2, 3, 3), (1, 4, 5), (3, 3, 2)])
def test_monomial_moment_backbone(grid, p, q, k):
    c = 0.3 + 0.8j
    lhs = integrate_disc(Monomial(c, p, q).on_grid(grid) * grid.z ** (k - 2), grid)
    assert abs(lhs - c * monomial_disc_integral(p + k - 2, q)) < 1e-12


def test_sampled_on_nodes_only():
    g = PolarGrid(8, 16)
    vals = ExampleFamily(3).on_grid(g)
    s = Sampled(g, vals)
    assert evaluate_mu(s, g.z[2, 5]) == vals[2, 5]
    assert np.array_equal(s.on_grid(g), vals)
    with pytest.raises(NoInterpolationError):
        evaluate_mu(s, 0.123 + 0.01j)
    with pytest.raises(NoInterpolationError):
        s.on_grid(PolarGrid(8, 32))


@given(a=complexes, b=complexes, z=disc_points)
def test_combination_and_scale_are_pointwise_linear(a, b, z):
    m1, m2 = ExampleFamily(4), Harmonic(QuadraticDifferential([1j, 2]))
    lhs = evaluate_mu(combine((a, m1), (b, m2)), z)
    rhs = a * evaluate_mu(m1, z) + b * evaluate_mu(m2, z)
    assert abs(lhs - rhs) < 1e-12 * (1 + abs(a) + abs(b)) * 20
    for spec in (m2, Monomial(1j, 1, 2), m1):
        assert abs(evaluate_mu(scale(spec, a), z) - a * evaluate_mu(spec, z)) < 1e-12 * (1 + abs(a)) * 20


def test_quadratic_differential():
    phi = QuadraticDifferential([1, 2, 3])
    assert phi.degree == 2 and phi.coeff(5) == 0
    assert phi(2.0) == pytest.approx(17)
