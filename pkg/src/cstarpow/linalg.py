"""Tolerance-aware dense complex linear algebra.

All matrices are plain numpy arrays with complex128 entries.  Functions never
mutate their inputs; equality of matrices is always norm-based.
"""

from __future__ import annotations

import numpy as np

# Default comparison tolerance.  Double precision spectral routines deliver
# residuals around 1e-12 at the matrix sizes used here, so 1e-9 leaves margin.
DEFAULT_TOL = 1e-9

# Gap threshold for grouping eigenvalues into spectral clusters.  Random
# central elements have well separated spectra, so this is deliberately much
# coarser than DEFAULT_TOL.
SPECTRAL_GAP = 1e-6


def as_matrix(m) -> np.ndarray:
    out = np.asarray(m, dtype=complex)
    if out.ndim != 2:
        raise ValueError(f"expected a matrix, got array of shape {out.shape}")
    return out


def adjoint(m) -> np.ndarray:
    return as_matrix(m).conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices."""
    return np.kron(as_matrix(a), as_matrix(b))


def direct_sum(mats) -> np.ndarray:
    """Block-diagonal matrix with the given square blocks on the diagonal."""
    mats = [as_matrix(m) for m in mats]
    for m in mats:
        if m.shape[0] != m.shape[1]:
            raise ValueError("direct_sum requires square blocks")
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=complex)
    at = 0
    for m in mats:
        k = m.shape[0]
        out[at:at + k, at:at + k] = m
        at += k
    return out


def op_norm(m) -> float:
    """Operator norm (largest singular value)."""
    m = as_matrix(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def nullspace(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis, as columns, of the numerical kernel of m.

    A singular direction counts as null when its singular value is at most
    tol times the largest one.
    """
    m = as_matrix(m)
    if m.shape[0] == 0 or m.shape[1] == 0:
        return np.eye(m.shape[1], dtype=complex)
    # economy factorization suffices for tall inputs; wide inputs need the
    # full right factor to expose the trailing kernel directions
    full = m.shape[0] < m.shape[1]
    _, s, vh = np.linalg.svd(m, full_matrices=full)
    cutoff = tol * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj().T


def matrix_rank(m, tol: float = DEFAULT_TOL) -> int:
    m = as_matrix(m)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def orthonormal_columns(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the column space of a, as columns."""
    a = as_matrix(a)
    if a.size == 0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    rank = int(np.sum(s > tol * s[0]))
    return u[:, :rank]


def eig_hermitian(m, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending, real) and a unitary eigenvector matrix.

    Rejects inputs that fail the Hermiticity test ``op_norm(m - m*) <= tol *
    max(1, op_norm(m))``.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("eig_hermitian requires a square matrix")
    scale = max(1.0, op_norm(m))
    if op_norm(m - adjoint(m)) > tol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(m)
    return w, v


def is_projection(m, tol: float = DEFAULT_TOL) -> bool:
    """True iff m is numerically idempotent and self-adjoint."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("projection test requires a square matrix")
    return op_norm(m @ m - m) <= tol and op_norm(m - adjoint(m)) <= tol


def cluster_eigenvalues(w, gap: float = SPECTRAL_GAP) -> list[list[int]]:
    """Group ascending real eigenvalues into clusters separated by > gap."""
    clusters: list[list[int]] = []
    for i, x in enumerate(w):
        if clusters and x - w[i - 1] <= gap:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return clusters


def spectral_projections(m, tol: float = DEFAULT_TOL,
                         gap: float = SPECTRAL_GAP):
    """Orthogonal projections onto clustered eigenspaces of a Hermitian m.

    Returns a list of (cluster mean eigenvalue, projection) pairs.  The
    projections are mutually orthogonal idempotents summing to the identity.
    """
    w, v = eig_hermitian(m, tol)
    out = []
    for idx in cluster_eigenvalues(w, gap):
        cols = v[:, idx]
        out.append((float(np.mean(w[idx])), cols @ cols.conj().T))
    return out
