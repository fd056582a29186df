"""Small dense linear algebra with an explicit numerical-rank policy.

Everything downstream (homology, torsion, eigenvalue splitting) makes rank
decisions through the singular-value thresholds collected in `Tolerances`,
so the policy lives in one place and can be overridden per computation.
"""

from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the package.

    rank            -- relative singular-value cutoff for rank decisions
    relator         -- allowed ||rho(r) - 1|| when validating representations
                       (looser than `rank`: representation solving is itself
                       numerical)
    unit_eigenvalue -- |lambda - 1| below which an eigenvalue of the twisted
                       monodromy counts as the geometric eigenvalue 1
                       (eigenvalues of nonsymmetric matrices are less stable
                       than singular values)
    """

    rank: float = 1e-9
    relator: float = 1e-8
    unit_eigenvalue: float = 1e-6

    def with_rank(self, rank):
        return replace(self, rank=rank)


DEFAULT_TOL = Tolerances()


def _as_matrix(m):
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError("expected a matrix, got shape %r" % (a.shape,))
    return a


def singular_values(m):
    m = _as_matrix(m)
    if 0 in m.shape:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def numerical_rank(m, tol=DEFAULT_TOL):
    """Rank of `m` by SVD with relative threshold tol.rank * largest sv."""
    s = singular_values(m)
    if s.size == 0:
        return 0
    return int(np.sum(s > tol.rank * max(s[0], 1.0)))


def nullspace(m, tol=DEFAULT_TOL):
    """Orthonormal basis (columns) of ker(m)."""
    m = _as_matrix(m)
    if m.shape[0] == 0:
        return np.eye(m.shape[1], dtype=complex)
    if m.shape[1] == 0:
        return np.zeros((0, 0), dtype=complex)
    _, s, vh = np.linalg.svd(m)
    r = int(np.sum(s > tol.rank * max(s[0] if s.size else 0.0, 1.0)))
    return vh[r:].conj().T


def column_space(m, tol=DEFAULT_TOL):
    """Orthonormal basis (columns) of the column space of `m`."""
    m = _as_matrix(m)
    if 0 in m.shape:
        return np.zeros((m.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(m)
    r = int(np.sum(s > tol.rank * max(s[0] if s.size else 0.0, 1.0)))
    return u[:, :r]


def orthogonal_complement(basis, dim, tol=DEFAULT_TOL):
    """Orthonormal basis of the orthogonal complement of span(basis) in C^dim."""
    basis = _as_matrix(basis) if np.size(basis) else np.zeros((dim, 0), dtype=complex)
    if basis.shape[1] == 0:
        return np.eye(dim, dtype=complex)
    u, s, _ = np.linalg.svd(basis, full_matrices=True)
    r = int(np.sum(s > tol.rank * max(s[0], 1.0)))
    return u[:, r:]


def pivot_columns(m, rank):
    """Indices of `rank` well-conditioned columns of `m` (QR column pivoting).

    Deterministic, so repeated torsion evaluations are byte-stable.
    """
    if rank == 0:
        return []
    m = _as_matrix(m)
    _, _, piv = scipy.linalg.qr(m, pivoting=True)
    return sorted(int(p) for p in piv[:rank])


def solve_in_span(basis, vectors, tol=DEFAULT_TOL):
    """Coordinates of `vectors` (columns) in span(basis); raises if outside.

    Returns x with basis @ x ~= vectors.
    """
    basis = _as_matrix(basis)
    vectors = _as_matrix(vectors)
    if basis.shape[1] == 0:
        if vectors.size and np.linalg.norm(vectors) > 1e-6:
            raise np.linalg.LinAlgError("vectors not in the zero span")
        return np.zeros((0, vectors.shape[1]), dtype=complex)
    x, *_ = np.linalg.lstsq(basis, vectors, rcond=None)
    resid = np.linalg.norm(basis @ x - vectors)
    scale = max(1.0, np.linalg.norm(vectors))
    if resid > 1e-6 * scale:
        raise np.linalg.LinAlgError(
            "vectors are not in the span (residual %.3e)" % (resid / scale)
        )
    return x
