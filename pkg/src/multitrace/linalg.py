"""Dense linear algebra substrate.

Thin, contract-enforcing wrappers around LAPACK (through scipy) for the
small-to-medium dense problems that arise when discretized multitrace
operators are solved or their spectra computed.  All routines promote to
complex internally because relaxation parameters may be complex.  Every
function is pure (inputs are never mutated), so concurrent use is safe.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg


def _lu_factor_quiet(A):
    # singularity is detected and reported by _check_lu_pivots; scipy's
    # own advisory warning would only duplicate it
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        return scipy.linalg.lu_factor(A)

# Dense eigendecompositions beyond this size are out of scope; every
# desk-scale experiment in this package stays well below it.
DIMENSION_CAP = 4000


class SingularMatrixError(np.linalg.LinAlgError):
    """Matrix is singular to working precision."""

    def __init__(self, message, pivot_magnitude=None):
        super().__init__(message)
        self.pivot_magnitude = pivot_magnitude


@dataclass(frozen=True)
class EigenResult:
    """Eigenvalues (and optionally right eigenvectors) of a dense problem.

    ``residual_norm`` is ``max_i ||A v_i - lambda_i v_i|| / ||v_i||``
    (or the pencil analogue) when eigenvectors were requested, else 0.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    residual_norm: float

    def __post_init__(self):
        if not np.all(np.isfinite(self.eigenvalues)):
            raise ValueError("non-finite eigenvalues in result")


def _as_square(A, name="A"):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be square, got shape {A.shape}")
    if A.shape[0] > DIMENSION_CAP:
        raise ValueError(
            f"{name} has dimension {A.shape[0]} beyond the cap {DIMENSION_CAP}"
        )
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains non-finite entries")
    return A.astype(complex)


def _check_lu_pivots(lu, name):
    """Reject factorizations whose smallest pivot is at noise level."""
    diag = np.abs(np.diag(lu))
    scale = diag.max() if diag.size else 0.0
    tol = lu.shape[0] * np.finfo(float).eps * scale
    if scale == 0.0 or diag.min() <= tol:
        raise SingularMatrixError(
            f"{name} is singular to working precision "
            f"(smallest pivot magnitude {diag.min():.3e})",
            pivot_magnitude=float(diag.min()),
        )


def solve_dense(A, B):
    """Solve ``A X = B`` by pivoted LU factorization.

    ``B`` may be a vector or a matrix of right-hand sides.  Raises
    :class:`SingularMatrixError` with the offending pivot magnitude when
    ``A`` is singular to working precision.
    """
    A = _as_square(A)
    B = np.asarray(B, dtype=complex)
    vector_rhs = B.ndim == 1
    if vector_rhs:
        B = B[:, None]
    if B.shape[0] != A.shape[0]:
        raise ValueError(f"rhs rows {B.shape[0]} != matrix dimension {A.shape[0]}")
    lu, piv = _lu_factor_quiet(A)
    _check_lu_pivots(lu, "A")
    X = scipy.linalg.lu_solve((lu, piv), B)
    return X[:, 0] if vector_rhs else X


def eig_dense(A, compute_vectors=False):
    """All eigenvalues of a dense (possibly nonsymmetric) matrix.

    Uses the LAPACK Hessenberg + shifted-QR path on the complex-promoted
    matrix.  Eigenvalues of real matrices come out in conjugate pairs up
    to roundoff.
    """
    A = _as_square(A)
    if compute_vectors:
        w, v = scipy.linalg.eig(A, right=True)
        res = _eig_residual(A, w, v)
        return EigenResult(w, v, res)
    w = scipy.linalg.eigvals(A)
    return EigenResult(w, None, 0.0)


def eig_generalized(A, B, compute_vectors=False):
    """Eigenvalues of the pencil ``A v = lambda B v`` for invertible ``B``.

    Solved by the QZ algorithm without forming ``B^{-1} A``; agrees with
    ``eig_dense(solve(B, A))`` up to tolerance.  Raises
    :class:`SingularMatrixError` when ``B`` is singular to working
    precision.
    """
    A = _as_square(A, "A")
    B = _as_square(B, "B")
    if A.shape != B.shape:
        raise ValueError(f"pencil shapes differ: {A.shape} vs {B.shape}")
    lu, _ = _lu_factor_quiet(B)
    _check_lu_pivots(lu, "B")
    if compute_vectors:
        w, v = scipy.linalg.eig(A, B, right=True)
        res = _pencil_residual(A, B, w, v)
        return EigenResult(w, v, res)
    w = scipy.linalg.eigvals(A, B)
    return EigenResult(w, None, 0.0)


def _eig_residual(A, w, v):
    r = A @ v - v * w[None, :]
    return float(np.max(np.linalg.norm(r, axis=0) / np.linalg.norm(v, axis=0)))


def _pencil_residual(A, B, w, v):
    r = A @ v - (B @ v) * w[None, :]
    return float(np.max(np.linalg.norm(r, axis=0) / np.linalg.norm(v, axis=0)))


def match_multisets(values, reference, tol, label=""):
    """Assert two complex multisets agree within ``tol`` by optimal pairing.

    Returns the maximum matched distance.  Uses a minimax assignment so
    the comparison is robust to ordering of nearly-tied values.
    """
    from scipy.optimize import linear_sum_assignment

    values = np.asarray(values, dtype=complex)
    reference = np.asarray(reference, dtype=complex)
    if values.shape != reference.shape:
        raise ValueError(
            f"multiset sizes differ{': ' + label if label else ''}: "
            f"{values.shape} vs {reference.shape}"
        )
    cost = np.abs(values[:, None] - reference[None, :])
    rows, cols = linear_sum_assignment(cost)
    worst = float(cost[rows, cols].max()) if values.size else 0.0
    if worst > tol:
        raise AssertionError(
            f"multisets differ{': ' + label if label else ''}: "
            f"max matched distance {worst:.3e} > {tol:.1e}"
        )
    return worst
