"""Bases of the trace-zero symmetric subspace and of the zero-sum vector subspace.

The canonical trace-zero basis puts the diagonal part first (built from a
difference chain spanning the zero-sum subspace) followed by the symmetric
off-diagonal units in lexicographic order, so exported systems are
byte-stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import DegenerateBasisError

__all__ = [
    "traceless_dim",
    "OnesPerpBasis",
    "ones_perp_basis",
    "TracelessBasis",
    "canonical_traceless_basis",
    "custom_traceless_basis",
    "orthonormalize",
    "gram",
    "conjugate_basis",
]

BASIS_KINDS = ("canonical", "orthonormal", "custom")


def traceless_dim(n: int) -> int:
    """Dimension n(n+1)/2 - 1 of the symmetric trace-zero subspace."""
    return n * (n + 1) // 2 - 1


@dataclass(frozen=True)
class OnesPerpBasis:
    """Columns of an n x (n-1) matrix spanning the zero-sum subspace."""

    n: int
    columns: np.ndarray

    def __post_init__(self):
        V = np.array(self.columns, dtype=float)
        if V.shape != (self.n, self.n - 1):
            raise ValueError(
                f"columns must have shape ({self.n}, {self.n - 1}), got {V.shape}"
            )
        sums = np.abs(V.sum(axis=0))
        if sums.max() > DEFAULT_TOLERANCES.trace_tol * (1.0 + np.abs(V).max()):
            raise ValueError(
                f"every column must sum to zero; worst column sum {sums.max():.3e}"
            )
        if np.linalg.svd(V, compute_uv=False)[-1] <= DEFAULT_TOLERANCES.rank_tol:
            raise ValueError("columns are numerically linearly dependent")
        V.setflags(write=False)
        object.__setattr__(self, "columns", V)


def ones_perp_basis(n: int) -> OnesPerpBasis:
    """Difference chain v_i = e_i - e_{i+1}, i = 1..n-1."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    V = np.zeros((n, n - 1))
    idx = np.arange(n - 1)
    V[idx, idx] = 1.0
    V[idx + 1, idx] = -1.0
    return OnesPerpBasis(n=n, columns=V)


@dataclass(frozen=True)
class TracelessBasis:
    """Ordered basis B_1..B_d of the symmetric trace-zero subspace.

    Invariants are enforced at construction: the count d matches the
    subspace dimension, every element is symmetric and traceless, and the
    trace-inner-product Gram matrix is positive definite (independence).
    A basis tagged ``orthonormal`` must have Gram matrix I to within
    ``orth_tol``.
    """

    n: int
    mats: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in BASIS_KINDS:
            raise ValueError(f"kind must be one of {BASIS_KINDS}, got {self.kind!r}")
        if self.n < 2:
            raise ValueError(
                f"need n >= 2 (the trace-zero subspace is trivial at n = 1), got {self.n}"
            )
        mats = np.array(self.mats, dtype=float)
        d = traceless_dim(self.n)
        if mats.shape != (d, self.n, self.n):
            raise ValueError(
                f"expected {d} matrices of side {self.n}, got shape {mats.shape}"
            )
        if not np.all(np.isfinite(mats)):
            raise ValueError("basis entries must be finite")
        gap = np.abs(mats - mats.transpose(0, 2, 1)).max()
        if gap > 1e-12:
            raise ValueError(f"basis elements must be symmetric (gap {gap:.3e})")
        mats = (mats + mats.transpose(0, 2, 1)) / 2.0
        scale = 1.0 + np.abs(mats).max()
        traces = np.abs(np.trace(mats, axis1=1, axis2=2))
        if traces.max() > DEFAULT_TOLERANCES.trace_tol * scale:
            raise ValueError(
                f"basis elements must be traceless; worst |trace| {traces.max():.3e}"
            )
        G = _gram(mats)
        mu_min = float(np.linalg.eigvalsh(G)[0])
        if mu_min <= DEFAULT_TOLERANCES.rank_tol:
            raise DegenerateBasisError(
                f"basis is numerically dependent: smallest Gram eigenvalue {mu_min:.3e}"
            )
        if self.kind == "orthonormal":
            ortho_gap = float(np.abs(G - np.eye(d)).max())
            if ortho_gap > DEFAULT_TOLERANCES.orth_tol:
                raise ValueError(
                    f"kind='orthonormal' but Gram deviates from I by {ortho_gap:.3e}"
                )
        mats.setflags(write=False)
        object.__setattr__(self, "mats", mats)

    @property
    def d(self) -> int:
        return self.mats.shape[0]


def canonical_traceless_basis(n: int, ones_basis: OnesPerpBasis | None = None) -> TracelessBasis:
    """diag(v_1)..diag(v_{n-1}) followed by the off-diagonal units M_ij.

    The v_i come from ``ones_basis`` (difference chain by default); the
    M_ij carry a one in the (i, j) and (j, i) entries and are ordered
    lexicographically by (i, j).
    """
    if n < 2:
        raise ValueError(f"need n >= 2 (d = 0 at n = 1), got {n}")
    if ones_basis is None:
        ones_basis = ones_perp_basis(n)
    elif ones_basis.n != n:
        raise ValueError(f"ones_basis is for n = {ones_basis.n}, expected {n}")
    mats = np.zeros((traceless_dim(n), n, n))
    for i in range(n - 1):
        np.fill_diagonal(mats[i], ones_basis.columns[:, i])
    pos = n - 1
    for i in range(n):
        for j in range(i + 1, n):
            mats[pos, i, j] = 1.0
            mats[pos, j, i] = 1.0
            pos += 1
    return TracelessBasis(n=n, mats=mats, kind="canonical")


def custom_traceless_basis(mats) -> TracelessBasis:
    """Wrap user-supplied matrices as a validated trace-zero basis."""
    mats = np.asarray(mats, dtype=float)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError(f"expected an array of square matrices, got shape {mats.shape}")
    return TracelessBasis(n=mats.shape[1], mats=mats, kind="custom")


def orthonormalize(basis: TracelessBasis, tol: Tolerances = DEFAULT_TOLERANCES) -> TracelessBasis:
    """Gram-Schmidt under the trace inner product; same span, Gram = I.

    For symmetric matrices tr(AB) equals the flat Euclidean dot product,
    so the sweep runs on flattened rows (modified Gram-Schmidt).
    """
    d, n = basis.d, basis.n
    F = basis.mats.reshape(d, -1).copy()
    for i in range(d):
        norm0 = np.linalg.norm(F[i])
        for j in range(i):
            F[i] -= (F[i] @ F[j]) * F[j]
        pivot = np.linalg.norm(F[i])
        if pivot <= tol.rank_tol * max(1.0, norm0):
            raise DegenerateBasisError(
                f"Gram-Schmidt pivot {pivot:.3e} at element {i}: basis is degenerate"
            )
        F[i] /= pivot
    return TracelessBasis(n=n, mats=F.reshape(d, n, n), kind="orthonormal")


def _gram(mats: np.ndarray) -> np.ndarray:
    F = mats.reshape(mats.shape[0], -1)
    G = F @ F.T
    return (G + G.T) / 2.0


def gram(basis: TracelessBasis) -> np.ndarray:
    """Trace-inner-product Gram matrix, G_ij = tr(B_i B_j)."""
    return _gram(basis.mats)


def conjugate_basis(basis: TracelessBasis, Q) -> TracelessBasis:
    """Basis {Q B_i Q.T} for orthogonal Q.

    Orthogonal conjugation preserves traces and the trace inner product, so
    orthonormality survives; the canonical tag does not.
    """
    Q = np.asarray(Q, dtype=float)
    n = basis.n
    if Q.shape != (n, n):
        raise ValueError(f"Q must be {n} x {n}, got {Q.shape}")
    if np.abs(Q.T @ Q - np.eye(n)).max() > DEFAULT_TOLERANCES.orth_tol:
        raise ValueError("Q is not orthogonal")
    mats = np.einsum("ab,ibc,dc->iad", Q, basis.mats, Q)
    kind = "orthonormal" if basis.kind == "orthonormal" else "custom"
    return TracelessBasis(n=n, mats=mats, kind=kind)
