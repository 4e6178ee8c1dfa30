import numpy as np
import pytest

from multitrace.linalg import (DIMENSION_CAP, SingularMatrixError, eig_dense,
                               eig_generalized, match_multisets, solve_dense)


def test_solve_identity():
    B = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
    X = solve_dense(np.eye(3), B)
    assert np.allclose(X, B, atol=0, rtol=0)


def test_solve_diagonal_inverse():
    X = solve_dense(np.diag([2.0, 4.0]), np.eye(2))
    assert np.allclose(X, np.diag([0.5, 0.25]), atol=1e-15)


def test_solve_recovers_constructed_solution():
    rng = np.random.default_rng(7)
    A = np.eye(10) + 0.1 * rng.standard_normal((10, 10))
    X = rng.standard_normal((10, 3))
    B = A @ X
    assert np.max(np.abs(solve_dense(A, B) - X)) < 1e-12


def test_solve_reports_singularity_with_pivot():
    A = np.array([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(SingularMatrixError) as err:
        solve_dense(A, np.ones(2))
    assert err.value.pivot_magnitude is not None
    assert err.value.pivot_magnitude < 1e-12


def test_solve_roundtrip_well_conditioned():
    rng = np.random.default_rng(3)
    for n in (5, 40):
        q1, _ = np.linalg.qr(rng.standard_normal((n, n)))
        q2, _ = np.linalg.qr(rng.standard_normal((n, n)))
        # condition number <= 1e6 by construction
        A = q1 @ np.diag(np.geomspace(1.0, 1e6, n)) @ q2
        b = rng.standard_normal(n)
        x = solve_dense(A, b)
        assert np.linalg.norm(A @ x - b) <= 1e-10 * np.linalg.norm(b)


def test_eig_symmetric_exchange():
    res = eig_dense(np.array([[0.0, 1.0], [1.0, 0.0]]))
    match_multisets(res.eigenvalues, [1.0, -1.0], 1e-14)


def test_eig_companion_cube_roots_of_unity():
    C = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    w = np.exp(2j * np.pi / 3)
    match_multisets(eig_dense(C).eigenvalues, [1.0, w, w ** 2], 1e-12)


def test_eig_jacobi_line_operator_value():
    from multitrace import line1d
    op = line1d.jacobi_operator_2dom(1.0, 0.1, 0.1, line1d.JumpData(0, 0))
    ref = [0.30151134457776363, 0.30151134457776363,
           -0.30151134457776363, -0.30151134457776363]
    match_multisets(eig_dense(op.matrix).eigenvalues, ref, 1e-6)


def test_eig_residual_norm():
    rng = np.random.default_rng(11)
    for n in (20, 120):
        A = rng.standard_normal((n, n))
        res = eig_dense(A, compute_vectors=True)
        assert res.residual_norm <= 1e-8 * np.linalg.norm(A, 2)
        assert len(res.eigenvalues) == n


def test_eig_conjugate_pairs_for_real_input():
    rng = np.random.default_rng(2)
    A = rng.standard_normal((12, 12))
    w = eig_dense(A).eigenvalues
    match_multisets(w, np.conj(w), 1e-10)


def test_eig_generalized_identity_mass():
    rng = np.random.default_rng(5)
    A = rng.standard_normal((15, 15))
    w1 = eig_generalized(A, np.eye(15)).eigenvalues
    w2 = eig_dense(A).eigenvalues
    match_multisets(w1, w2, 1e-10)


def test_eig_generalized_proportional_pencil():
    rng = np.random.default_rng(6)
    B = np.eye(8) + 0.2 * rng.standard_normal((8, 8))
    w = eig_generalized(2.0 * B, B).eigenvalues
    assert np.max(np.abs(w - 2.0)) < 1e-10


def test_eig_generalized_constructed_pencil():
    rng = np.random.default_rng(9)
    G = rng.standard_normal((3, 3))
    B = G @ G.T + 3.0 * np.eye(3)
    A = B @ np.diag([1.0, 2.0, 3.0])
    match_multisets(eig_generalized(A, B).eigenvalues, [1.0, 2.0, 3.0], 1e-10)


def test_eig_generalized_rejects_singular_mass():
    A = np.eye(3)
    B = np.diag([1.0, 1.0, 0.0])
    with pytest.raises(SingularMatrixError):
        eig_generalized(A, B)


def test_eig_generalized_pencil_residual():
    rng = np.random.default_rng(13)
    A = rng.standard_normal((25, 25))
    B = np.eye(25) + 0.1 * rng.standard_normal((25, 25))
    res = eig_generalized(A, B, compute_vectors=True)
    assert res.residual_norm < 1e-8 * np.linalg.norm(A, 2)


def test_dimension_cap_enforced():
    with pytest.raises(ValueError, match="cap"):
        eig_dense(np.zeros((DIMENSION_CAP + 1, DIMENSION_CAP + 1)))


def test_nonfinite_rejected():
    A = np.array([[1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(ValueError, match="finite"):
        solve_dense(A, np.ones(2))
