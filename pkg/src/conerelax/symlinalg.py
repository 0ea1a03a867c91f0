"""Dense symmetric linear algebra and real-rooted polynomial machinery.

Everything downstream works with three small value types: a validated
symmetric matrix (a plain float ndarray), its eigendecomposition
(:class:`Spectrum`), and monic univariate polynomials (:class:`MonicPoly`)
together with a root finder specialised to repeated derivatives of
characteristic polynomials, where every root is real and bracketed by the
roots one derivative up.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import NotPositiveDefiniteError, NumericalFailureError

__all__ = [
    "symmetric",
    "Spectrum",
    "eigh",
    "elem_sym",
    "big_E",
    "MonicPoly",
    "poly_from_roots",
    "char_poly",
    "poly_derivative",
    "real_roots_interlaced",
    "inv_sqrt",
]


def symmetric(entries, symmetrize: bool = False, asym_tol: float = 1e-12) -> np.ndarray:
    """Validate ``entries`` as a dense real symmetric matrix.

    Returns a float copy that is exactly symmetric.  Asymmetric input is
    rejected unless ``symmetrize`` is set, in which case ``(A + A.T)/2`` is
    returned.
    """
    A = np.asarray(entries, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] < 1:
        raise ValueError("matrix dimension must be at least 1")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    if not symmetrize:
        gap = float(np.abs(A - A.T).max())
        if gap > asym_tol:
            raise ValueError(
                f"matrix is not symmetric (max |A - A.T| = {gap:.3e}); "
                "pass symmetrize=True to average with the transpose"
            )
    return (A + A.T) / 2.0


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition ``X = Q diag(eigenvalues) Q.T`` of a symmetric matrix.

    Eigenvalues are stored ascending; ``abs_descending`` gives the view
    ordered by decreasing absolute value for callers that want it.
    """

    eigenvalues: np.ndarray
    diagonalizer: np.ndarray

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        self.diagonalizer.setflags(write=False)

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    def abs_descending(self) -> np.ndarray:
        """Eigenvalues reordered by decreasing |value| (stable on ties)."""
        order = np.argsort(-np.abs(self.eigenvalues), kind="stable")
        return self.eigenvalues[order]


def eigh(X, tol: Tolerances = DEFAULT_TOLERANCES) -> Spectrum:
    """Eigendecomposition of a symmetric matrix, eigenvalues ascending.

    The result is checked against the decomposition contract (orthogonal
    diagonalizer, reconstruction of ``X``); a violation or solver
    non-convergence raises :class:`NumericalFailureError`.
    """
    X = symmetric(X)
    n = X.shape[0]
    try:
        w, Q = np.linalg.eigh(X)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(
            f"eigendecomposition did not converge for n={n}, "
            f"||X||_F = {np.linalg.norm(X):.6e} (LAPACK sweep budget exhausted)"
        ) from exc
    orth_gap = float(np.abs(Q.T @ Q - np.eye(n)).max())
    recon_gap = float(np.abs((Q * w) @ Q.T - X).max())
    scale = 1.0 + float(np.abs(X).max())
    if orth_gap > tol.orth_tol or recon_gap > tol.recon_tol * scale:
        raise NumericalFailureError(
            f"eigendecomposition inconsistent: orthogonality gap {orth_gap:.3e}, "
            f"reconstruction gap {recon_gap:.3e}, ||X||_F = {np.linalg.norm(X):.6e}"
        )
    return Spectrum(eigenvalues=w, diagonalizer=Q)


def elem_sym(values: Sequence[float], k: int) -> float:
    """Elementary symmetric polynomial ``e_k`` of the given values.

    Single pass over the values with the stable prefix recurrence
    ``e_k(x_1..x_m) = e_k(x_1..x_{m-1}) + x_m e_{k-1}(x_1..x_{m-1})``.
    ``e_0`` is 1 (empty product).
    """
    x = np.asarray(values, dtype=float).ravel()
    n = x.shape[0]
    if not 0 <= k <= n:
        raise ValueError(f"k must be in 0..{n}, got {k}")
    e = np.zeros(k + 1)
    e[0] = 1.0
    for i in range(n):
        for j in range(min(i + 1, k), 0, -1):
            e[j] += x[i] * e[j - 1]
    return float(e[k])


def big_E(X, k: int, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """``e_k`` of the eigenvalues of ``X``.

    Equivalently the coefficient of ``t^(n-k)`` in ``det(X + t I)``;
    ``big_E(X, n)`` is the determinant.
    """
    return elem_sym(eigh(X, tol).eigenvalues, k)


@dataclass(frozen=True)
class MonicPoly:
    """Monic univariate polynomial, coefficients in descending powers of t.

    Construction normalizes the leading coefficient to exactly 1.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).ravel()
        if c.size == 0:
            raise ValueError("a polynomial needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("polynomial coefficients must be finite")
        if c[0] == 0.0:
            raise ValueError("leading coefficient must be nonzero")
        if c[0] != 1.0:
            c = c / c[0]
            c[0] = 1.0
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def __call__(self, t):
        return np.polyval(self.coeffs, t)


def poly_from_roots(roots: Sequence[float]) -> MonicPoly:
    """Monic polynomial ``prod_i (t - r_i)`` built by sequential convolution."""
    c = np.array([1.0])
    for r in np.asarray(roots, dtype=float).ravel():
        c = np.convolve(c, np.array([1.0, -r]))
    return MonicPoly(c)


def char_poly(spec: Spectrum) -> MonicPoly:
    """Monic characteristic polynomial of the matrix behind ``spec``."""
    return poly_from_roots(spec.eigenvalues)


def poly_derivative(p: MonicPoly, k: int = 1) -> MonicPoly:
    """k-th formal derivative of ``p`` renormalized to monic.

    Degree drops by ``k``; ``k == degree`` yields the constant polynomial 1.
    """
    if not 0 <= k <= p.degree:
        raise ValueError(f"derivative order must be in 0..{p.degree}, got {k}")
    c = np.array(p.coeffs)
    for _ in range(k):
        m = c.shape[0] - 1
        c = c[:-1] * np.arange(m, 0, -1)
        c = c / c[0]
    return MonicPoly(c)


def real_roots_interlaced(
    p: MonicPoly,
    parent_roots: Sequence[float],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """All roots of ``p`` given the sorted roots of its real-rooted antiderivative.

    Each root of ``p`` lies in a bracket formed by consecutive parent roots.
    A collapsed bracket (parent roots equal, or closer than the width
    tolerance) pins a root there without iteration; those pinned roots are
    then deflated out of ``p`` by synthetic division, leaving exactly one
    root strictly inside each remaining bracket, which bisection finds from
    a guaranteed sign change.  A wide bracket whose deflated values carry
    the same sign at both ends is accepted at the near-zero end when one
    exists (nearly equal parent roots straddling a multiple root), and is
    otherwise a :class:`NumericalFailureError`: the parent roots are
    inconsistent with ``p``.
    """
    parents = np.asarray(parent_roots, dtype=float).ravel()
    if parents.size != p.degree + 1:
        raise ValueError(
            f"need degree+1 = {p.degree + 1} parent roots, got {parents.size}"
        )
    if parents.size > 1 and np.any(np.diff(parents) < 0):
        raise ValueError("parent roots must be sorted ascending")

    brackets = []  # (a, b, pinned_root_or_None) in bracket order
    coeffs = [float(c) for c in p.coeffs]
    for a, b in zip(parents[:-1], parents[1:]):
        a, b = float(a), float(b)
        if a == b:
            pinned = a
        elif b - a <= tol.root_tol * (1.0 + max(abs(a), abs(b))):
            pinned = 0.5 * (a + b)
        else:
            pinned = None
        if pinned is not None:
            coeffs = _deflate(coeffs, pinned)
        brackets.append((a, b, pinned))

    flat_tol = 1e-8 * (1.0 + max(abs(c) for c in coeffs))
    roots = [
        pinned if pinned is not None else _bracket_root(coeffs, a, b, tol.root_tol, flat_tol)
        for a, b, pinned in brackets
    ]
    return np.asarray(roots)


def _horner(coeffs: list, t: float) -> float:
    acc = 0.0
    for c in coeffs:
        acc = acc * t + c
    return acc


def _deflate(coeffs: list, root: float) -> list:
    """Synthetic division of a monic polynomial by (t - root), remainder dropped."""
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + root * out[-1])
    return out


def _bracket_root(coeffs: list, a: float, b: float, root_tol: float, flat_tol: float) -> float:
    if a == b:
        return a
    if b - a <= root_tol * (1.0 + max(abs(a), abs(b))):
        return 0.5 * (a + b)
    fa = _horner(coeffs, a)
    fb = _horner(coeffs, b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        # Same sign at both ends: legitimate only next to a multiple root,
        # where the end value is already numerically zero.
        if min(abs(fa), abs(fb)) <= flat_tol:
            return a if abs(fa) <= abs(fb) else b
        raise NumericalFailureError(
            f"no sign change over bracket [{a!r}, {b!r}] "
            f"(p = {fa!r}, {fb!r}); parent roots inconsistent with polynomial"
        )
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = _horner(coeffs, mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (fa > 0.0):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
        if b - a <= root_tol * (1.0 + max(abs(a), abs(b))):
            return 0.5 * (a + b)
    raise NumericalFailureError(
        f"bisection did not converge over bracket [{a!r}, {b!r}]"
    )


def inv_sqrt(X, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Inverse principal square root of a positive definite symmetric matrix.

    Raises :class:`NotPositiveDefiniteError` carrying the smallest
    eigenvalue when that eigenvalue does not clear ``pd_tol``.
    """
    spec = eigh(X, tol)
    mu_min = float(spec.eigenvalues[0])
    if mu_min <= tol.pd_tol:
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite: smallest eigenvalue "
            f"{mu_min:.6e} <= pd_tol {tol.pd_tol:.1e}",
            mu_min,
        )
    Q = spec.diagonalizer
    R = (Q * spec.eigenvalues**-0.5) @ Q.T
    return (R + R.T) / 2.0
