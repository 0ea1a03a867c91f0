"""The trace-form representation map and the LMI constructions built on it.

``bmatrix`` realizes the d x d matrix with entries tr(B_i X B_j) over a
trace-zero basis; its positive semidefiniteness characterizes the first
derivative relaxation of the PSD cone.  The remaining builders package
that map, the derivative relaxation of an arbitrary cone with a definite
determinantal description, the second derivative relaxation of the
non-negative orthant, and the arrow-matrix form of the quadratic
relaxation cone as solver-ready coefficient systems.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import IO

import numpy as np

from .basisgen import OnesPerpBasis, TracelessBasis, gram, ones_perp_basis
from .config import DEFAULT_TOLERANCES, Tolerances
from .symlinalg import inv_sqrt, symmetric

__all__ = [
    "LmiSystem",
    "bmatrix",
    "bmap_lmi",
    "derivative_cone_lmi",
    "orthant2_lmi",
    "quad_cone_matrix",
    "quad_cone_lmi",
    "lmi_to_json_dict",
    "write_lmi_json",
    "write_sdpa_sparse",
]

SCHEMA_VERSION = 1

# Off-diagonal variables multiply E_pq + E_qp, i.e. the coefficient of the
# matrix entry itself.  Stated in every export so solver-side code does not
# introduce a stray factor of 2 (or sqrt 2) for off-diagonal coordinates.
ENTRY_CONVENTION = (
    "variables are the upper-triangular entries of X in row-major order; "
    "an off-diagonal variable X[p][q] multiplies E_pq + E_qp (the plain "
    "matrix entry, no sqrt(2) scaling)"
)


@dataclass(frozen=True)
class LmiSystem:
    """Coefficient matrices of a linear matrix inequality sum_i x_i A_i >= 0."""

    size: int
    coeffs: np.ndarray
    var_labels: tuple[str, ...]
    comment: str = ""

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=float)
        if coeffs.ndim != 3 or coeffs.shape[1:] != (self.size, self.size):
            raise ValueError(
                f"coefficients must have shape (m, {self.size}, {self.size}), "
                f"got {coeffs.shape}"
            )
        if len(self.var_labels) != coeffs.shape[0]:
            raise ValueError("one label per coefficient matrix required")
        gap = np.abs(coeffs - coeffs.transpose(0, 2, 1)).max() if coeffs.size else 0.0
        if gap > 1e-12:
            raise ValueError(f"coefficient matrices must be symmetric (gap {gap:.3e})")
        coeffs = (coeffs + coeffs.transpose(0, 2, 1)) / 2.0
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "var_labels", tuple(self.var_labels))

    @property
    def num_vars(self) -> int:
        return self.coeffs.shape[0]

    def evaluate(self, x) -> np.ndarray:
        """The pencil value sum_i x_i A_i at a coordinate vector."""
        x = np.asarray(x, dtype=float).ravel()
        if x.shape[0] != self.num_vars:
            raise ValueError(f"expected {self.num_vars} coordinates, got {x.shape[0]}")
        return np.einsum("i,iab->ab", x, self.coeffs)


def bmatrix(X, basis: TracelessBasis) -> np.ndarray:
    """The d x d matrix with (i, j) entry tr(B_i X B_j).

    Linear in X, symmetric by the transpose invariance of the trace, and
    positive semidefinite exactly when X lies in the first derivative
    relaxation of the PSD cone.
    """
    X = symmetric(X)
    if X.shape[0] != basis.n:
        raise ValueError(f"X has side {X.shape[0]}, basis expects {basis.n}")
    d = basis.d
    # tr(B_i X B_j) = sum((B_i X) * B_j) elementwise, since B_j is symmetric.
    C = basis.mats @ X
    G = C.reshape(d, -1) @ basis.mats.reshape(d, -1).T
    return (G + G.T) / 2.0


def _upper_triangular_units(n: int):
    for p in range(n):
        for q in range(p, n):
            U = np.zeros((n, n))
            U[p, q] = 1.0
            U[q, p] = 1.0
            yield f"X[{p}][{q}]", U


def bmap_lmi(basis: TracelessBasis) -> LmiSystem:
    """The representation map as an LMI over the upper-triangular entries of X.

    One coefficient matrix per entry of X; reconstructing the pencil at the
    coordinates of any symmetric X reproduces ``bmatrix(X, basis)``.
    """
    labels, coeffs = [], []
    for label, U in _upper_triangular_units(basis.n):
        labels.append(label)
        coeffs.append(bmatrix(U, basis))
    return LmiSystem(
        size=basis.d,
        coeffs=np.array(coeffs),
        var_labels=tuple(labels),
        comment=ENTRY_CONVENTION,
    )


def derivative_cone_lmi(
    mats,
    e,
    basis: TracelessBasis,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> LmiSystem:
    """LMI for the derivative relaxation, in direction e, of the cone
    described by the pencil sum_i A_i x_i of symmetric l x l matrices.

    The pencil at e must be positive definite; its inverse square root
    conjugates every coefficient before the representation map is applied,
    so the resulting system has size l(l+1)/2 - 1 and one variable per A_i.
    """
    A = np.asarray(mats, dtype=float)
    if A.ndim != 3 or A.shape[1] != A.shape[2]:
        raise ValueError(f"expected an array of square matrices, got shape {A.shape}")
    m, side = A.shape[0], A.shape[1]
    if side != basis.n:
        raise ValueError(f"matrices have side {side}, basis expects {basis.n}")
    e = np.asarray(e, dtype=float).ravel()
    if e.shape[0] != m:
        raise ValueError(f"direction has {e.shape[0]} entries, expected {m}")
    gap = np.abs(A - A.transpose(0, 2, 1)).max()
    if gap > 1e-12:
        raise ValueError(f"coefficient matrices must be symmetric (gap {gap:.3e})")
    A0 = np.einsum("i,iab->ab", e, A)
    R = inv_sqrt(A0, tol)  # raises NotPositiveDefiniteError when e is bad
    coeffs = [bmatrix(R @ Ai @ R, basis) for Ai in A]
    return LmiSystem(
        size=basis.d,
        coeffs=np.array(coeffs),
        var_labels=tuple(f"x[{i}]" for i in range(m)),
    )


def orthant2_lmi(
    n: int,
    basis: TracelessBasis,
    ones_basis: OnesPerpBasis | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> LmiSystem:
    """LMI of size n(n-1)/2 - 1 for the second derivative relaxation of the
    non-negative orthant, over a trace-zero basis of side n-1.

    The spanning matrix of the zero-sum subspace is column-orthonormalized
    first (W = V (V^T V)^{-1/2}), which makes the construction independent
    of the particular spanning set; the coefficient for x_k is then the
    representation of W^T E_kk W, the outer product of the k-th row of W.
    """
    if n < 3:
        raise ValueError(f"need n >= 3 (basis side n-1 >= 2), got {n}")
    if basis.n != n - 1:
        raise ValueError(f"basis side must be n-1 = {n - 1}, got {basis.n}")
    if ones_basis is None:
        ones_basis = ones_perp_basis(n)
    elif ones_basis.n != n:
        raise ValueError(f"ones_basis is for n = {ones_basis.n}, expected {n}")
    V = ones_basis.columns
    W = V @ inv_sqrt(V.T @ V, tol)
    coeffs = [bmatrix(np.outer(W[k], W[k]), basis) for k in range(n)]
    return LmiSystem(
        size=basis.d,
        coeffs=np.array(coeffs),
        var_labels=tuple(f"x[{k}]" for k in range(n)),
    )


def quad_cone_matrix(X, basis: TracelessBasis, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Identity-plus-arrow matrix whose PSD-ness captures the quadratic
    relaxation cone (trace and trace-of-square constraint).

    Requires a basis orthonormal under the trace inner product.  The first
    basis coefficient tr(B_1 X) sits in the arrow head; the rest fill the
    first row and column, with -tr(B_1 X) repeated down the diagonal.
    """
    X = symmetric(X)
    n, d = basis.n, basis.d
    if X.shape[0] != n:
        raise ValueError(f"X has side {X.shape[0]}, basis expects {n}")
    G = gram(basis)
    if np.abs(G - np.eye(d)).max() > tol.orth_tol:
        raise ValueError("quad_cone_matrix requires an orthonormal basis")
    t = np.einsum("iab,ab->i", basis.mats, X)
    s = math.sqrt((n - 1) / n) * float(np.trace(X))
    M = np.zeros((d, d))
    M[0, :] = t
    M[:, 0] = t
    idx = np.arange(1, d)
    M[idx, idx] = -t[0]
    M[0, 0] = t[0]
    return s * np.eye(d) + M


def quad_cone_lmi(basis: TracelessBasis, tol: Tolerances = DEFAULT_TOLERANCES) -> LmiSystem:
    """The quadratic relaxation cone as an LMI over the entries of X."""
    labels, coeffs = [], []
    for label, U in _upper_triangular_units(basis.n):
        labels.append(label)
        coeffs.append(quad_cone_matrix(U, basis, tol))
    return LmiSystem(
        size=basis.d,
        coeffs=np.array(coeffs),
        var_labels=tuple(labels),
        comment=ENTRY_CONVENTION,
    )


def lmi_to_json_dict(system: LmiSystem) -> dict:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "size": system.size,
        "numVars": system.num_vars,
        "labels": list(system.var_labels),
        "coeffs": [m.tolist() for m in system.coeffs],
        "comment": system.comment,
    }


def write_lmi_json(system: LmiSystem, fh: IO[str]) -> None:
    json.dump(lmi_to_json_dict(system), fh, sort_keys=True, indent=2)
    fh.write("\n")


def write_sdpa_sparse(system: LmiSystem, fh: IO[str], drop_tol: float = 1e-14) -> None:
    """SDPA sparse text: one block, 1-based indices, upper triangle only.

    The system is a pure feasibility LMI, so the objective matrix and the
    right-hand-side vector are zero; constraint matrix i holds the
    coefficient of variable i.  Entries below ``drop_tol`` in magnitude are
    dropped (lossy by that much).
    """
    fh.write("* LMI coefficient export (feasibility form): find x with sum_i x_i F_i >= 0\n")
    fh.write("* F_0 = 0 and the right-hand side is zero; F_i is the coefficient of variable i\n")
    if system.comment:
        fh.write(f"* {system.comment}\n")
    for i, label in enumerate(system.var_labels, start=1):
        fh.write(f"* variable {i}: {label}\n")
    fh.write(f"{system.num_vars}\n")
    fh.write("1\n")
    fh.write(f"{system.size}\n")
    fh.write(" ".join(["0.0"] * system.num_vars) + "\n")
    for i, mat in enumerate(system.coeffs, start=1):
        for r in range(system.size):
            for c in range(r, system.size):
                v = mat[r, c]
                if abs(v) >= drop_tol:
                    fh.write(f"{i} 1 {r + 1} {c + 1} {v:.17g}\n")
