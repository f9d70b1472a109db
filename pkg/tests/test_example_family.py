import numpy as np
import pytest
from hypothesis import given, strategies as st

from teichtangent.errors import OutOfRangeError, StepTooLargeError, TruncationError
from teichtangent.example_family import (
    ExampleMap,
    branch_mismatch,
    dilatation_check,
    example_expected_cdot,
    example_expected_fourier,
    example_finite_t_coefficients,
    example_map_eval,
)
from teichtangent.series import evaluate_field
from teichtangent.beltrami import ExampleFamily
from teichtangent.variation import fourier_variation, schlicht_variation


def test_map_values():
    m = ExampleMap(3, 0.1)
    assert example_map_eval(m, 2.0) == pytest.approx(2 / 1.025, abs=1e-15)
    assert example_map_eval(m, 0.5) == pytest.approx(1 / 2.0125, abs=1e-15)
    assert example_map_eval(m, 0) == 0
    ident = ExampleMap(5, 0)
    for z in (0.3 + 0.1j, 2j, -1.0):
        assert example_map_eval(ident, z) == pytest.approx(z)


def test_out_of_range():
    with pytest.raises(OutOfRangeError):
        ExampleMap(4, 0.25)
    with pytest.raises(ValueError):
        ExampleMap(2, 0.1)


def test_expected_fourier():
    f = example_expected_fourier(3, 8)
    assert f[2] == -1j and f[-2] == 1j
    with pytest.raises(TruncationError):
        example_expected_fourier(5, 3)
    th = np.linspace(0, 6, 13)
    assert np.allclose(evaluate_field(example_expected_fourier(6, 8), th), 2 * np.sin(5 * th))


def test_expected_cdot():
    assert example_expected_cdot(3, 8)[2] == -1
    g = example_expected_cdot(7, 8)
    assert g[6] == -1 and sum(abs(g[k]) for k in range(2, 9)) == 1
    for n in range(3, 9):
        assert 1j * np.conj(example_expected_fourier(n, 8)[n - 1]) == example_expected_cdot(n, 8)[n - 1]


def test_dilatation_examples():
    assert dilatation_check(ExampleMap(3, 0), 0.2 + 0.1j) == pytest.approx(0, abs=1e-9)
    assert dilatation_check(ExampleMap(3, 0.05), 0.3 + 0.2j) < 1e-4
    assert dilatation_check(ExampleMap(4, 0.1), 0.5) < 1e-4
    with pytest.raises(StepTooLargeError):
        dilatation_check(ExampleMap(3, 0.05), 0.995)


def test_finite_t_examples():
    t = 0.07
    c = example_finite_t_coefficients(ExampleMap(3, t), 8)
    assert c[0] == -t and c[2] == t**2
    assert c[1] == 0 and c[3] == 0
    assert np.all(example_finite_t_coefficients(ExampleMap(4, 0), 8) == 0)
    # derivative at t = 0 of c_2
    h = 1e-6
    d = (example_finite_t_coefficients(ExampleMap(3, h), 4)[0] - example_finite_t_coefficients(ExampleMap(3, -h), 4)[0]) / (2 * h)
    assert d == pytest.approx(example_expected_cdot(3, 4)[2])


@pytest.mark.parametrize("n", range(3, 9))
@pytest.mark.parametrize("t", [0.05, 0.1j, 0.05 - 0.05j])
def test_branch_agreement(n, t):
    if abs(t) >= 1 / n:
        pytest.skip("t outside the admissible disc")
    assert branch_mismatch(ExampleMap(n, t)) < 1e-12


@pytest.mark.parametrize("n", range(3, 9))
def test_quadrature_corroboration(grid, n):
    assert fourier_variation(ExampleFamily(n), 12, grid).max_abs_diff(example_expected_fourier(n, 12)) < 1e-8
    assert schlicht_variation(ExampleFamily(n), 12, grid).max_abs_diff(example_expected_cdot(n, 12)) < 1e-8


@pytest.mark.parametrize("n", range(3, 9))
def test_first_order_accuracy(n):
    ts = np.array([1e-1, 1e-2, 1e-3])
    ts = ts[ts < 1 / n]
    err = np.array([abs(example_finite_t_coefficients(ExampleMap(n, t), 2 * n)[n - 3] + t) for t in ts])
    C = np.max(err / ts**2)
    assert C < 1e-12 or np.all(err <= C * ts**2)
    assert np.max(err) < 1e-15  # the coefficient c_{n-1}(t) is exactly -t


@given(st.integers(3, 8), st.floats(0, 0.9), st.floats(0, 2 * np.pi), st.floats(0, 0.95), st.floats(0, 2 * np.pi))
def test_dilatation_property(n, rt, at, rz, az):
    t = rt / n * np.exp(1j * at)
    z = rz * np.exp(1j * az)
    assert dilatation_check(ExampleMap(n, t), z) < 1e-4
