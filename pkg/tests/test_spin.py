import numpy as np
import pytest

from fiberphase.spin import (
    CARTESIAN_FROM_ANGULAR,
    GAUGE_TAG,
    helicity_eigenstates,
    helicity_operator,
    spin1_matrices,
)

S = spin1_matrices()


def test_matrices_hermitian_by_construction():
    for m in (S.s1, S.s2, S.s3):
        assert np.array_equal(m, m.conj().T)


def test_commutators_close_the_algebra():
    # fl(1/sqrt2)^2 is one ulp off 0.5, so [s1,s2] carries ~2e-16; the other
    # two close exactly.  1e-15 pins all three at the rounding floor.
    pairs = [
        (S.s1, S.s2, S.s3),
        (S.s2, S.s3, S.s1),
        (S.s3, S.s1, S.s2),
    ]
    for a, b, c in pairs:
        assert np.abs(a @ b - b @ a - 1j * c).max() <= 1e-15


def test_casimir_is_two():
    total = S.s1 @ S.s1 + S.s2 @ S.s2 + S.s3 @ S.s3
    assert np.abs(total - 2.0 * np.eye(3)).max() <= 1e-15


def test_s3_spectrum_exact():
    assert np.array_equal(np.linalg.eigvalsh(S.s3), np.array([-1.0, 0.0, 1.0]))


def test_cartesian_change_of_basis():
    U = CARTESIAN_FROM_ANGULAR
    assert np.abs(U @ U.conj().T - np.eye(3)).max() < 1e-15
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    for i, m in enumerate((S.s1, S.s2, S.s3)):
        assert np.abs(U @ m @ U.conj().T - (-1j * eps[i])).max() < 1e-15


def test_helicity_operator_axis_aligned():
    assert np.array_equal(helicity_operator([0.0, 0.0, 1.0], S), S.s3)
    assert np.array_equal(helicity_operator([1.0, 0.0, 0.0], S), S.s1)


def test_helicity_operator_tilted_spectrum():
    # oracle: dense eigensolver on the 3x3 matrix
    d = np.array([1.0, 1.0, 1.0]) / np.sqrt(3.0)
    w = np.linalg.eigvalsh(helicity_operator(d, S))
    assert np.abs(w - np.array([-1.0, 0.0, 1.0])).max() < 1e-12


def test_helicity_operator_rejects_non_unit():
    with pytest.raises(ValueError, match="unit"):
        helicity_operator([0.0, 0.0, 2.0], S)


def test_eigenstates_along_z():
    basis = helicity_eigenstates([0.0, 0.0, 1.0], S)
    assert np.array_equal(basis.e_plus, np.array([1.0, 0.0, 0.0], dtype=complex))
    assert np.array_equal(basis.e_zero, np.array([0.0, 1.0, 0.0], dtype=complex))
    assert np.array_equal(basis.e_minus, np.array([0.0, 0.0, 1.0], dtype=complex))
    assert basis.gauge == GAUGE_TAG


def test_eigenvalue_labels_flip_with_direction():
    up = helicity_eigenstates([0.0, 0.0, 1.0], S)
    down = helicity_eigenstates([0.0, 0.0, -1.0], S)
    assert np.abs(np.abs(np.vdot(down.e_plus, up.e_minus)) - 1.0) < 1e-14
    assert np.abs(np.abs(np.vdot(down.e_minus, up.e_plus)) - 1.0) < 1e-14


def test_eigenpair_residuals_tilted():
    lam = np.pi / 3
    d = np.array([np.sin(lam), 0.0, np.cos(lam)])
    op = helicity_operator(d, S)
    basis = helicity_eigenstates(d, S)
    for val, vec in ((-1, basis.e_minus), (0, basis.e_zero), (1, basis.e_plus)):
        assert np.linalg.norm(op @ vec - val * vec) < 1e-12


def test_eigenstates_orthonormal():
    rng = np.random.default_rng(7)
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    basis = helicity_eigenstates(v, S)
    mat = np.stack([basis.e_minus, basis.e_zero, basis.e_plus], axis=1)
    assert np.abs(mat.conj().T @ mat - np.eye(3)).max() < 1e-13


def test_gauge_largest_component_real_positive():
    rng = np.random.default_rng(3)
    for _ in range(50):
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        basis = helicity_eigenstates(v, S)
        for vec in (basis.e_minus, basis.e_zero, basis.e_plus):
            j = int(np.argmax(np.abs(vec)))
            assert vec[j].real > 0
            assert abs(vec[j].imag) < 1e-12


def test_gauge_determinism_bitwise():
    d = np.array([0.3, -0.5, np.sqrt(1 - 0.09 - 0.25)])
    a = helicity_eigenstates(d, S)
    b = helicity_eigenstates(d, S)
    assert np.array_equal(a.e_minus, b.e_minus)
    assert np.array_equal(a.e_zero, b.e_zero)
    assert np.array_equal(a.e_plus, b.e_plus)


def test_gauge_continuity_under_small_perturbation():
    lam = np.pi / 3  # away from gauge-degenerate (tie) directions
    base = np.array([np.sin(lam), 0.0, np.cos(lam)])
    eps = 1e-7
    tilted = np.array([np.sin(lam + eps), 0.0, np.cos(lam + eps)])
    a = helicity_eigenstates(base, S)
    b = helicity_eigenstates(tilted, S)
    for x, y in ((a.e_minus, b.e_minus), (a.e_zero, b.e_zero), (a.e_plus, b.e_plus)):
        assert np.abs(x - y).max() < 1e-5


def test_random_directions_hermitian_and_spectrum():
    rng = np.random.default_rng(20240817)
    for _ in range(1000):
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        op = helicity_operator(v, S)
        assert np.abs(op - op.conj().T).max() < 1e-14
        w = np.linalg.eigvalsh(op)
        assert np.abs(w - np.array([-1.0, 0.0, 1.0])).max() < 1e-10


def test_state_accessor_rejects_bad_label():
    basis = helicity_eigenstates([0.0, 0.0, 1.0], S)
    with pytest.raises(ValueError):
        basis.state(2)
