"""Spectra of block Jacobi iteration operators and cluster diagnostics.

The iteration operator for relaxation parameters ``sigma_j`` has the
exact eigenvalues ``+-sqrt(sigma_j / (1 + sigma_j))`` in the analytic 1D
setting; discretized 2D operators cluster around the same points.  This
module forms the operators as generalized pencils (mass matrices are
never inverted), computes spectra, sweeps relaxation grids and
quantifies how much of a spectrum sits near the theoretical points.
"""

from dataclasses import dataclass

import numpy as np

from . import line1d
from .bem2d.assembly import block_diag2, trace_flip
from .linalg import eig_dense, eig_generalized


@dataclass(frozen=True)
class RelaxationConfig:
    """Relaxation parameters, one per subdomain; -1 is excluded."""

    sigmas: tuple

    def __post_init__(self):
        object.__setattr__(self, "sigmas",
                           tuple(complex(s) for s in self.sigmas))
        if any(s == -1 for s in self.sigmas):
            raise ValueError("relaxation parameter -1 is not invertible")


def theoretical_points(sigmas):
    """Accumulation points ``+-sqrt(s / (1 + s))`` for each relaxation."""
    pts = []
    for s in sigmas:
        root = complex(np.sqrt(complex(s) / (1.0 + complex(s))))
        pts.extend([root, -root])
    return np.array(pts)


def spectral_radius_formula(sigma):
    """Closed-form spectral radius ``sqrt(|s / (1 + s)|)``."""
    s = complex(sigma)
    return float(np.sqrt(abs(s / (1.0 + s))))


@dataclass(frozen=True)
class ClusterReport:
    """Fraction of eigenvalues within ``eps`` of each theoretical point."""

    points: np.ndarray
    fractions: np.ndarray
    remainder: float
    eps: float


def cluster_report(eigenvalues, points, eps):
    """Per-point cluster fractions plus the fraction matching no point."""
    if eps < 0:
        raise ValueError("cluster radius must be nonnegative")
    eigenvalues = np.asarray(eigenvalues, dtype=complex)
    points = np.asarray(points, dtype=complex)
    n = len(eigenvalues)
    if n == 0:
        raise ValueError("empty spectrum")
    dist = np.abs(eigenvalues[:, None] - points[None, :])
    inside = dist <= eps
    fractions = inside.sum(axis=0) / n
    remainder = float(np.count_nonzero(~inside.any(axis=1))) / n
    return ClusterReport(points, fractions, remainder, eps)


@dataclass(frozen=True)
class SpectrumResult:
    """Spectrum of a Jacobi operator with cluster diagnostics."""

    eigenvalues: np.ndarray
    spectral_radius: float
    theoretical_points: np.ndarray
    clusters: ClusterReport

    @property
    def cluster_fractions(self):
        return self.clusters.fractions

    @property
    def remainder_fraction(self):
        return self.clusters.remainder


def summarize_spectrum(eigenvalues, sigmas, eps=0.05):
    eigenvalues = np.asarray(eigenvalues, dtype=complex)
    pts = theoretical_points(sigmas)
    rep = cluster_report(eigenvalues, pts, eps)
    return SpectrumResult(eigenvalues, float(np.max(np.abs(eigenvalues))),
                          pts, rep)


def _mass_and_flip(calderon):
    n = calderon.mesh.n_nodes
    return calderon.M_block, trace_flip(n)


def jacobi_2d_2dom(P1, P2, cfg):
    """Generalized pencil of the two-subdomain Jacobi operator.

    The operator inverts the diagonal blocks ``(1 + s_j) Id - P_j`` of
    the multitrace system against the relaxation couplings ``s_j X``;
    here it is returned as a pencil ``(A, B)`` whose eigenvalues match,
    with mass matrices kept on both sides instead of being inverted.
    Rows with ``s_j = 0`` switch to the limit form ``P_j X`` paired with
    the plain mass.
    """
    if P1.mesh is not P2.mesh:
        raise ValueError("two-subdomain operators must share one curve")
    s1, s2 = cfg.sigmas
    M1, X1 = _mass_and_flip(P1)
    M2, X2 = _mass_and_flip(P2)
    n1, n2 = P1.dim, P2.dim
    dtype = np.result_type(complex(s1), complex(s2), float)
    A = np.zeros((n1 + n2, n1 + n2), dtype=dtype)
    B = np.zeros_like(A)
    for (row, col, s, P, M, X, nr) in (
            (0, n1, s1, P1, M1, X1, n1),
            (n1, 0, s2, P2, M2, X2, n2)):
        if s == 0:
            A[row:row + nr, col:col + nr] = P.P @ X
            B[row:row + nr, row:row + nr] = M
        else:
            A[row:row + nr, col:col + nr] = s * (M @ X)
            B[row:row + nr, row:row + nr] = (1 + s) * M - P.P
    return A, B


def jacobi_2d_3dom(P1, P2, coupling, cfg):
    """Generalized pencil of the three-subdomain Jacobi operator.

    Unknown ordering ``(U1, U01, U02, U2)``.  The middle subdomain
    carries one 4-block diagonal unit combining its two self blocks and
    the cross-curve couplings; outer rows couple through ``s_j X`` as in
    the two-subdomain case.  ``s_j = 0`` rows use the limit form.
    """
    s0, s1, s2 = cfg.sigmas
    Pt1, Pt2 = coupling.P1_tilde, coupling.P2_tilde
    R12, R21 = coupling.R12, coupling.R21
    if not (P1.mesh is Pt1.mesh and P2.mesh is Pt2.mesh):
        raise ValueError("projector/coupling meshes are inconsistent")
    Ma, Xa = _mass_and_flip(P1)      # inner curve
    Mb, Xb = _mass_and_flip(P2)      # outer curve
    na, nb = P1.dim, P2.dim
    dim = 2 * na + 2 * nb
    dtype = np.result_type(complex(s0), complex(s1), complex(s2), float)
    A = np.zeros((dim, dim), dtype=dtype)
    B = np.zeros_like(A)
    # index offsets: U1: 0, U01: na, U02: 2*na, U2: 2*na + nb
    o1, o01, o02, o2 = 0, na, 2 * na, 2 * na + nb

    if s1 == 0:
        A[o1:o1 + na, o01:o01 + na] = P1.P @ Xa
        B[o1:o1 + na, o1:o1 + na] = Ma
    else:
        A[o1:o1 + na, o01:o01 + na] = s1 * (Ma @ Xa)
        B[o1:o1 + na, o1:o1 + na] = (1 + s1) * Ma - P1.P

    if s0 == 0:
        A[o01:o01 + na, o1:o1 + na] = Pt1.P @ Xa
        A[o01:o01 + na, o2:o2 + nb] = R12 @ Xb
        A[o02:o02 + nb, o1:o1 + na] = R21 @ Xa
        A[o02:o02 + nb, o2:o2 + nb] = Pt2.P @ Xb
        B[o01:o01 + na, o01:o01 + na] = Ma
        B[o02:o02 + nb, o02:o02 + nb] = Mb
    else:
        A[o01:o01 + na, o1:o1 + na] = s0 * (Ma @ Xa)
        A[o02:o02 + nb, o2:o2 + nb] = s0 * (Mb @ Xb)
        B[o01:o01 + na, o01:o01 + na] = (1 + s0) * Ma - Pt1.P
        B[o01:o01 + na, o02:o02 + nb] = -R12
        B[o02:o02 + nb, o01:o01 + na] = -R21
        B[o02:o02 + nb, o02:o02 + nb] = (1 + s0) * Mb - Pt2.P

    if s2 == 0:
        A[o2:o2 + nb, o02:o02 + nb] = P2.P @ Xb
        B[o2:o2 + nb, o2:o2 + nb] = Mb
    else:
        A[o2:o2 + nb, o02:o02 + nb] = s2 * (Mb @ Xb)
        B[o2:o2 + nb, o2:o2 + nb] = (1 + s2) * Mb - P2.P
    return A, B


def pencil_spectrum(A, B, sigmas, eps=0.05):
    """Eigenvalues of the pencil with cluster diagnostics."""
    res = eig_generalized(A, B)
    return summarize_spectrum(res.eigenvalues, sigmas, eps)


def analytic_spectrum_2dom(a, sigma1, sigma2, eps=0.05):
    """Spectrum of the exact 4x4 line operator (zero jump data)."""
    op = line1d.jacobi_operator_2dom(a, sigma1, sigma2,
                                     line1d.JumpData(0.0, 0.0))
    eigs = eig_dense(op.matrix).eigenvalues
    return summarize_spectrum(eigs, (sigma1, sigma2), eps)


def analytic_spectrum_3dom(a, sigma0, sigma1, sigma2, eps=0.05):
    """Spectrum of the exact 8x8 line operator (zero jump data)."""
    zero = line1d.JumpData(0.0, 0.0)
    op = line1d.jacobi_operator_3dom(a, sigma0, sigma1, sigma2, zero, zero)
    eigs = eig_dense(op.matrix).eigenvalues
    return summarize_spectrum(eigs, (sigma0, sigma1, sigma2), eps)


@dataclass(frozen=True)
class SweepRow:
    """One relaxation grid point of a spectral radius sweep."""

    sigma: complex
    spectral_radius: float
    n_eigs: int
    cluster_fractions: np.ndarray
    remainder: float


def sigma_sweep(builder, sigma_grid, eps=0.05):
    """Spectral radius versus relaxation parameter.

    ``builder(sigma)`` must return the eigenvalue array of the Jacobi
    operator with all relaxation parameters set to ``sigma``.  Grid
    points are independent (order of evaluation is irrelevant); rows
    come back ordered by the grid.  Near ``sigma = 0`` discretized
    operators overshoot the analytic radius; the per-row remainder
    fraction quantifies that contamination and no smoothing is applied.
    """
    rows = []
    for s in sigma_grid:
        if complex(s) == -1:
            raise ValueError("sigma grid must avoid -1")
        eigs = np.asarray(builder(s), dtype=complex)
        rep = cluster_report(eigs, theoretical_points([s]), eps)
        rows.append(SweepRow(complex(s), float(np.max(np.abs(eigs))),
                             len(eigs), rep.fractions, rep.remainder))
    return rows


def write_eigenvalues_csv(path, eigenvalues):
    """Eigenvalue dump, one ``re, im`` pair per line."""
    eigs = np.asarray(eigenvalues, dtype=complex)
    with open(path, "w") as fh:
        fh.write("re,im\n")
        for lam in eigs:
            fh.write(f"{lam.real:.16e},{lam.imag:.16e}\n")


def write_sweep_csv(path, rows):
    """Sweep dump: ``sigma, rho, n_eigs, frac_cluster_*, frac_remainder``."""
    if not rows:
        raise ValueError("empty sweep")
    k = len(rows[0].cluster_fractions)
    with open(path, "w") as fh:
        frac_names = ",".join(f"frac_cluster_{i + 1}" for i in range(k))
        fh.write(f"sigma,rho,n_eigs,{frac_names},frac_remainder\n")
        for row in rows:
            sig = row.sigma.real if row.sigma.imag == 0 else row.sigma
            fracs = ",".join(f"{f:.6f}" for f in row.cluster_fractions)
            fh.write(f"{sig},{row.spectral_radius:.16e},{row.n_eigs},"
                     f"{fracs},{row.remainder:.6f}\n")
