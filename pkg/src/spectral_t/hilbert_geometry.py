"""Subspaces of a finite-dimensional Hilbert space and the angles between them.

A subspace is held as an orthonormal basis (columns). Real and complex
scalars share one code path: every adjoint is a conjugate transpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DimensionMismatch, NotPositiveDefinite

RANK_TOL = 1e-10
INTERSECT_TOL = 1e-9
CONTAIN_TOL = 1e-9
PD_TOL = 1e-10
KASSABOV_REL = 1e-8
KASSABOV_ABS = 1e-12

POSITIVE_DEFINITE = "positive-definite"
BORDERLINE = "borderline"
NOT_POSITIVE_DEFINITE = "not-positive-definite"


def classify_min_eigenvalue(value: float, tol: float = PD_TOL) -> str:
    if value > tol:
        return POSITIVE_DEFINITE
    if value >= -tol:
        return BORDERLINE
    return NOT_POSITIVE_DEFINITE


@dataclass(frozen=True, eq=False)
class Subspace:
    basis: np.ndarray  # (ambient, dim), orthonormal columns

    @property
    def ambient(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def project(self, x: np.ndarray) -> np.ndarray:
        return self.basis @ (self.basis.conj().T @ x)

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def residual(self, other: Subspace) -> float:
        """Largest distance from a unit vector of ``other`` to this subspace."""
        if other.dim == 0:
            return 0.0
        diff = other.basis - self.project(other.basis)
        return float(np.linalg.norm(diff, axis=0).max())

    def contains(self, other: Subspace, tol: float = CONTAIN_TOL) -> bool:
        _check_ambient([self, other])
        return self.residual(other) <= tol


def zero_subspace(ambient: int, dtype=float) -> Subspace:
    return Subspace(np.zeros((ambient, 0), dtype=dtype))


def _check_ambient(subspaces: Sequence[Subspace]) -> int:
    dims = {U.ambient for U in subspaces}
    if len(dims) > 1:
        raise DimensionMismatch(f"ambient dimensions differ: {sorted(dims)}")
    return dims.pop()


def span_columns(matrix: np.ndarray, tol: float = RANK_TOL) -> Subspace:
    """Orthonormal basis of the column space, rank cut at ``tol`` (relative to max(1, s_max))."""
    matrix = np.asarray(matrix)
    if matrix.shape[1] == 0:
        return zero_subspace(matrix.shape[0], matrix.dtype)
    u, s, _ = np.linalg.svd(matrix, full_matrices=False)
    cut = tol * max(1.0, float(s[0]) if len(s) else 0.0)
    return Subspace(u[:, s > cut])


def subspace_from_spanning(vectors: Sequence[Sequence[float]], ambient: int | None = None) -> Subspace:
    """Subspace spanned by ``vectors``; ``ambient`` is needed only when the list is empty."""
    vectors = [np.asarray(v) for v in vectors]
    if not vectors:
        if ambient is None:
            raise DimensionMismatch("ambient dimension required for an empty spanning set")
        return zero_subspace(ambient)
    sizes = {v.shape for v in vectors}
    if len(sizes) > 1 or (ambient is not None and sizes != {(ambient,)}):
        raise DimensionMismatch(f"vectors have shapes {sorted(sizes)}")
    return span_columns(np.column_stack(vectors))


def _intersect_pair(U: Subspace, V: Subspace) -> Subspace:
    if U.dim == 0 or V.dim == 0:
        return zero_subspace(U.ambient, np.result_type(U.basis, V.basis))
    p, s, _ = np.linalg.svd(U.basis.conj().T @ V.basis)
    keep = s >= 1.0 - INTERSECT_TOL
    return span_columns(U.basis @ p[:, : len(s)][:, keep])


def intersect(subspaces: Sequence[Subspace]) -> Subspace:
    """Intersection via principal vectors with cosine >= 1 - 1e-9, folded pairwise."""
    if not subspaces:
        raise ValueError("intersection of an empty family")
    _check_ambient(subspaces)
    out = subspaces[0]
    for U in subspaces[1:]:
        out = _intersect_pair(out, U)
    return out


def orthogonal_complement_in(U: Subspace, W: Subspace) -> Subspace:
    """U minus W, for W contained in U."""
    return span_columns(U.basis - W.project(U.basis))


def angle_cos(U1: Subspace, U2: Subspace) -> float:
    """Cosine of the angle between subspaces; 0 when one contains the other.

    Otherwise it is the top principal cosine between the parts of U1 and U2
    orthogonal to their intersection.
    """
    _check_ambient([U1, U2])
    if U2.contains(U1) or U1.contains(U2):
        return 0.0
    W = intersect([U1, U2])
    C1, C2 = orthogonal_complement_in(U1, W), orthogonal_complement_in(U2, W)
    if C1.dim == 0 or C2.dim == 0:
        return 0.0
    top = np.linalg.svd(C1.basis.conj().T @ C2.basis, compute_uv=False)[0]
    return float(min(max(top, 0.0), 1.0))


class CosineMatrix(NamedTuple):
    matrix: np.ndarray
    lambda_min: float
    verdict: str

    @property
    def positive_definite(self) -> bool:
        return self.verdict == POSITIVE_DEFINITE


def cosine_matrix(subspaces: Sequence[Subspace]) -> CosineMatrix:
    """Unit diagonal, -cos(angle(U_i, U_j)) off the diagonal."""
    if len(subspaces) < 2:
        raise ValueError("need at least two subspaces")
    _check_ambient(subspaces)
    k = len(subspaces)
    A = np.eye(k)
    for i in range(k):
        for j in range(i + 1, k):
            A[i, j] = A[j, i] = -angle_cos(subspaces[i], subspaces[j])
    lam = float(np.linalg.eigvalsh(A)[0])
    return CosineMatrix(A, lam, classify_min_eigenvalue(lam))


class KassabovResult(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def kassabov_check(subspaces: Sequence[Subspace], x: np.ndarray) -> KassabovResult:
    """Compare ||x - P_cap x||^2 with d^T A^{-1} d, d_i = ||x - P_{U_i} x||.

    Raises:
        NotPositiveDefinite: when the cosine matrix fails the PD tolerance.
    """
    cm = cosine_matrix(subspaces)
    if not cm.positive_definite:
        raise NotPositiveDefinite(f"cosine matrix has smallest eigenvalue {cm.lambda_min:.3e}")
    x = np.asarray(x)
    if x.shape != (subspaces[0].ambient,):
        raise DimensionMismatch(f"x has shape {x.shape}, ambient dimension is {subspaces[0].ambient}")
    cap = intersect(subspaces)
    lhs = float(np.linalg.norm(x - cap.project(x)) ** 2)
    d = np.array([np.linalg.norm(x - U.project(x)) for U in subspaces])
    rhs = float(d @ np.linalg.solve(cm.matrix, d))
    return KassabovResult(lhs, rhs, lhs <= rhs * (1 + KASSABOV_REL) + KASSABOV_ABS)
