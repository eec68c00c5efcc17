"""
Tests for the matrix core: frames, characteristic data, sampling.
"""
import numpy as np
import pytest

from charvol.errors import BudgetExceeded, InvariantViolation, SizeMismatch
from charvol.matcore import (adjoint_matrix, bilinear_form,
                             char_derivative, check_group_element,
                             check_lie_element, companion_section,
                             draw_group_element, frame_coords,
                             frame_from_coords, is_regular,
                             random_group_element, sigma,
                             sigma_derivative_cocycle, standard_frame)


def test_bilinear_form_frozen_values():
    e12 = np.zeros((2, 2), dtype=complex)
    e12[0, 1] = 1.0
    e21 = e12.T.copy()
    h = np.diag([1.0, -1.0]).astype(complex)
    assert bilinear_form(e12, e21) == pytest.approx(-1.0)
    assert bilinear_form(h, h) == pytest.approx(-2.0)
    assert bilinear_form(e12, e12) == pytest.approx(0.0)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_standard_frame_orthonormal(n):
    frame = standard_frame(n)
    assert len(frame) == n * n - 1
    for a, x in enumerate(frame):
        assert abs(np.trace(x)) < 1e-14
        for b, y in enumerate(frame):
            expected = 1.0 if a == b else 0.0
            assert bilinear_form(x, y) == pytest.approx(expected, abs=1e-13)


def test_standard_frame_layout_and_protection():
    frame = standard_frame(2)
    # diagonal direction comes first: i*diag(1,-1)/sqrt(2)
    np.testing.assert_allclose(frame[0],
                               1j * np.diag([1.0, -1.0]) / np.sqrt(2.0))
    with pytest.raises(ValueError):
        frame[0][0, 0] = 5.0


def test_frame_coords_round_trip():
    rng = np.random.default_rng(42)
    for n in (2, 3, 4):
        frame = standard_frame(n)
        x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        x -= (np.trace(x) / n) * np.eye(n)
        coords = frame_coords(frame, x)
        np.testing.assert_allclose(frame_from_coords(frame, coords), x,
                                   atol=1e-12)


def test_checkers_reject_bad_input():
    with pytest.raises(SizeMismatch):
        check_group_element(np.ones((2, 3)))
    with pytest.raises(InvariantViolation):
        check_group_element(2.0 * np.eye(2))
    with pytest.raises(InvariantViolation):
        check_lie_element(np.eye(2))


def test_sigma_frozen_value():
    a = np.diag([2.0, 0.5]).astype(complex)
    np.testing.assert_allclose(sigma(a), [2.5])
    b = np.diag([2.0, 3.0, 1.0 / 6.0]).astype(complex)
    np.testing.assert_allclose(sigma(b), [b.trace(),
                                          np.trace(np.linalg.inv(b))])


def test_char_derivative_matches_finite_difference():
    rng = np.random.default_rng(3)
    eps = 1e-6
    for n in (2, 3, 4):
        a = draw_group_element(rng, n)
        x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        analytic = char_derivative(a, x)
        numeric = (sigma(a + eps * x) - sigma(a - eps * x)) / (2 * eps)
        np.testing.assert_allclose(analytic, numeric, rtol=1e-5, atol=1e-5)


def test_sigma_derivative_cocycle_direction():
    rng = np.random.default_rng(4)
    a = draw_group_element(rng, 3)
    v = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    v -= (np.trace(v) / 3) * np.eye(3)
    np.testing.assert_allclose(sigma_derivative_cocycle(a, v),
                               char_derivative(a, v @ a), atol=1e-12)


def test_companion_section_frozen_and_round_trip():
    np.testing.assert_allclose(companion_section([0.0]),
                               [[0.0, -1.0], [1.0, 0.0]])
    rng = np.random.default_rng(5)
    for n in range(2, 7):
        p = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
        s = companion_section(p)
        assert np.linalg.det(s) == pytest.approx(1.0, abs=1e-10)
        np.testing.assert_allclose(sigma(s), p, atol=1e-10)


def test_is_regular_cases():
    assert is_regular(np.diag([2.0, 0.5]))
    assert not is_regular(np.eye(2))
    assert not is_regular(-np.eye(2))
    # unipotent: one eigenvalue but a single Jordan block, so regular
    assert is_regular(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert not is_regular(np.diag([2.0, 2.0, 0.25]))
    assert is_regular(np.diag([2.0, 3.0, 1.0 / 6.0]))


def test_adjoint_matrix_is_orthogonal_and_multiplicative():
    rng = np.random.default_rng(6)
    for n in (2, 3):
        a = draw_group_element(rng, n)
        b = draw_group_element(rng, n)
        ma = adjoint_matrix(a)
        mb = adjoint_matrix(b)
        d = n * n - 1
        np.testing.assert_allclose(ma.T @ ma, np.eye(d), atol=1e-10)
        np.testing.assert_allclose(adjoint_matrix(a @ b), ma @ mb,
                                   atol=1e-10)


def test_draw_group_element_unimodular_and_seeded():
    rng = np.random.default_rng(7)
    for n in (2, 3, 4):
        a = draw_group_element(rng, n)
        assert np.linalg.det(a) == pytest.approx(1.0, abs=1e-10)
    one = random_group_element(3, seed=123)
    two = random_group_element(3, seed=123)
    np.testing.assert_array_equal(one, two)
    other = random_group_element(3, seed=124)
    assert np.abs(one - other).max() > 1e-6


def test_draw_group_element_budget():
    class DeadRng:
        def uniform(self, lo, hi, size=None):
            return np.zeros(size)

    with pytest.raises(BudgetExceeded):
        draw_group_element(DeadRng(), 2)
