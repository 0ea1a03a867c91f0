"""Membership oracles for the cone family, with non-membership certificates.

Two independent routes decide membership in the first derivative relaxation
of the PSD cone: the root oracle (``in_dpsd`` with k = 1), which finds the
roots of the differentiated characteristic polynomial by interlaced
bisection, and the representation oracle (``in_s1_repr``), which tests
positive semidefiniteness of the trace-form matrix.  The root oracle is
the ground truth.

Caution: the tempting shortcut "second-smallest eigenvalue >= 0 and
e_{n-1}(eigenvalues) >= 0" is NOT equivalent; it falsely accepts
diag(-1, 0, 0), whose derivative roots are {-2/3, 0}.  Do not use it.

All margins are reported raw (smallest relevant root, eigenvalue, or
slack), not rescaled to a distance.  Membership uses the closed-cone
convention margin >= -tol * scale; callers that need to adjudicate
boundary points should look at the margin itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basisgen import TracelessBasis
from .bmap import bmatrix
from .config import DEFAULT_TOLERANCES
from .symlinalg import eigh, poly_derivative, poly_from_roots, real_roots_interlaced, symmetric

__all__ = [
    "Verdict",
    "in_psd",
    "in_dpsd",
    "in_dorthant",
    "in_qcone",
    "in_s1_repr",
    "witness_check",
    "in_quadcone_closed",
    "derivative_root_stages",
]


@dataclass(frozen=True)
class Verdict:
    """Membership decision with a signed margin and optional certificate.

    ``witness`` is populated only by the representation oracle, and only on
    non-membership: a unit-Frobenius traceless Y with tr(YXY) < 0.
    """

    member: bool
    margin: float
    method: str
    witness: np.ndarray | None = None


def _tol(tol: float | None) -> float:
    return DEFAULT_TOLERANCES.member_tol if tol is None else float(tol)


def derivative_root_stages(parent_roots, k: int) -> list[np.ndarray]:
    """Roots after 1..k differentiations of prod (t - r_i), one array per stage.

    Stage j is computed by interlaced bisection against the roots of stage
    j - 1, so every stage is cheap and guaranteed bracketed.
    """
    roots = np.sort(np.asarray(parent_roots, dtype=float).ravel())
    p = poly_from_roots(roots)
    stages = []
    for _ in range(k):
        p = poly_derivative(p, 1)
        roots = real_roots_interlaced(p, roots)
        stages.append(roots)
    return stages


def _derivative_min_root(values, k: int) -> float:
    values = np.sort(np.asarray(values, dtype=float).ravel())
    if k == 0:
        return float(values[0])
    return float(derivative_root_stages(values, k)[-1][0])


def in_psd(X, tol: float | None = None) -> Verdict:
    """X is PSD when its smallest eigenvalue clears the tolerance band."""
    X = symmetric(X)
    margin = float(eigh(X).eigenvalues[0])
    scale = 1.0 + float(np.abs(X).max())
    return Verdict(member=margin >= -_tol(tol) * scale, margin=margin, method="roots")


def in_dpsd(X, k: int, tol: float | None = None) -> Verdict:
    """Membership in the k-th derivative relaxation of the PSD cone.

    The margin is the smallest root of the k-th derivative of the
    characteristic polynomial; k = 0 reduces to the PSD check.
    """
    X = symmetric(X)
    n = X.shape[0]
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must be in 0..{n - 1}, got {k}")
    margin = _derivative_min_root(eigh(X).eigenvalues, k)
    scale = 1.0 + float(np.abs(X).max())
    return Verdict(member=margin >= -_tol(tol) * scale, margin=margin, method="roots")


def in_dorthant(x, k: int, tol: float | None = None) -> Verdict:
    """Membership of a vector in the k-th derivative relaxation of the orthant.

    Same root machinery as ``in_dpsd`` applied to prod (t - x_i).
    """
    x = np.asarray(x, dtype=float).ravel()
    n = x.shape[0]
    if n < 1:
        raise ValueError("need at least one coordinate")
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must be in 0..{n - 1}, got {k}")
    margin = _derivative_min_root(x, k)
    scale = 1.0 + float(np.abs(x).max())
    return Verdict(member=margin >= -_tol(tol) * scale, margin=margin, method="roots")


def in_qcone(X, tol: float | None = None) -> Verdict:
    """All pairwise eigenvalue sums non-negative; the two smallest decide."""
    X = symmetric(X)
    if X.shape[0] < 2:
        raise ValueError("pairwise-sum cone needs n >= 2")
    mu = eigh(X).eigenvalues
    margin = float(mu[0] + mu[1])
    scale = 1.0 + float(np.abs(X).max())
    return Verdict(member=margin >= -_tol(tol) * scale, margin=margin, method="pairwise")


def in_s1_repr(X, basis: TracelessBasis, tol: float | None = None) -> Verdict:
    """Representation route: X is in the cone when the trace-form matrix is PSD.

    On rejection, the eigenvector of the most negative eigenvalue is pulled
    back through the basis to a traceless certificate Y, normalized to
    tr(Y^2) = 1.
    """
    X = symmetric(X)
    B = bmatrix(X, basis)
    spec = eigh(B)
    margin = float(spec.eigenvalues[0])
    scale = 1.0 + float(np.abs(B).max())
    member = margin >= -_tol(tol) * scale
    witness = None
    if not member:
        y = spec.diagonalizer[:, 0]
        W = np.einsum("i,iab->ab", y, basis.mats)
        W = (W + W.T) / 2.0
        W /= math.sqrt(float((W * W).sum()))
        W.setflags(write=False)
        witness = W
    return Verdict(member=member, margin=margin, method="representation", witness=witness)


def witness_check(X, Y, tol: float | None = None) -> tuple[float, bool]:
    """Evaluate tr(YXY) and decide whether Y certifies non-membership.

    Valid certificates are traceless (|tr Y| <= tol) with tr(YXY) < -tol.
    Returns the value and the validity flag.
    """
    X = symmetric(X)
    Y = symmetric(Y)
    if X.shape != Y.shape:
        raise ValueError(f"side mismatch: X is {X.shape[0]}, Y is {Y.shape[0]}")
    t = _tol(tol)
    value = float(np.einsum("ab,bc,ca->", Y, X, Y))
    valid = abs(float(np.trace(Y))) <= t and value < -t
    return value, valid


def in_quadcone_closed(X, tol: float | None = None) -> Verdict:
    """Closed-form quadratic relaxation cone: tr X >= 0 and tr(X)^2 >= tr(X^2).

    The margin is the smaller of the two raw slacks.
    """
    X = symmetric(X)
    if X.shape[0] < 2:
        raise ValueError("quadratic relaxation cone needs n >= 2")
    t = _tol(tol)
    tr = float(np.trace(X))
    tr_sq = float((X * X).sum())
    slack = tr * tr - tr_sq
    member = tr >= -t and slack >= -t * (1.0 + tr_sq)
    return Verdict(member=member, margin=min(tr, slack), method="closedQuad")
