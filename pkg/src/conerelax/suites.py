"""Verification campaigns over ranges of matrix sizes.

These drive the module-level checks at scale: oracle equivalence between
the root and representation routes, the cone inclusion chain, and the
determinantal identities.  Campaign results are plain dicts so the command
line can serialize them directly; sampling is reproducible from the seed
alone, independent of evaluation order.
"""

from __future__ import annotations

import numpy as np

from .basisgen import canonical_traceless_basis, ones_perp_basis, orthonormalize
from .config import DEFAULT_TOLERANCES
from .oracles import derivative_root_stages, in_s1_repr
from .symlinalg import eigh
from .verify import main_identity, q_eval, sanyal_constant, sample_strata, block_structure_check, sample_vector_strata

__all__ = ["equivalence_suite", "inclusions_suite", "identities_suite", "run_suites", "SUITE_NAMES"]

SUITE_NAMES = ("identities", "equivalence", "inclusions")

DEFAULT_BAND = 1e-6


def _sample_json(X) -> dict:
    return {"n": int(X.shape[0]), "rows": X.tolist()}


def equivalence_suite(
    n_range: range,
    trials: int = 1000,
    seed: int = 0,
    member_tol: float | None = None,
    band: float = DEFAULT_BAND,
) -> dict:
    """Root oracle vs representation oracle, canonical and orthonormal bases.

    Samples with root margin inside the band are recorded but not
    adjudicated; any disagreement outside the band fails the suite and the
    offending sample is serialized for replay.
    """
    member_tol = DEFAULT_TOLERANCES.member_tol if member_tol is None else member_tol
    per_n = {}
    counterexample = None
    for n in n_range:
        bases = {
            "canonical": canonical_traceless_basis(n),
            "orthonormal": orthonormalize(canonical_traceless_basis(n)),
        }
        checked = skipped = disagreements = 0
        for i in range(trials):
            X = sample_strata(n, seed, i)
            scale = 1.0 + float(np.abs(X).max())
            root_margin = float(derivative_root_stages(eigh(X).eigenvalues, 1)[-1][0])
            if abs(root_margin) <= band * scale:
                skipped += 1
                continue
            checked += 1
            root_member = root_margin >= -member_tol * scale
            for kind, basis in bases.items():
                verdict = in_s1_repr(X, basis, member_tol)
                if verdict.member != root_member:
                    disagreements += 1
                    if counterexample is None:
                        counterexample = {
                            "n": n,
                            "trial": i,
                            "basis": kind,
                            "rootMargin": root_margin,
                            "reprMargin": verdict.margin,
                            "sample": _sample_json(X),
                        }
        per_n[str(n)] = {
            "checked": checked,
            "skippedBand": skipped,
            "disagreements": disagreements,
        }
    passed = all(stats["disagreements"] == 0 for stats in per_n.values())
    return {
        "name": "equivalence",
        "passed": passed,
        "band": band,
        "trials": trials,
        "perN": per_n,
        "counterexample": counterexample,
    }


def inclusions_suite(
    n_range: range,
    trials: int = 1000,
    seed: int = 0,
    member_tol: float | None = None,
) -> dict:
    """Chain checks: PSD, every derivative relaxation step, the pairwise-sum
    cone, and the trace halfspace.

    The derivative chain uses the fact that the margin profile is monotone
    in the differentiation order (interlacing), so a violation there is a
    genuine root-finding fault; the cross-cone implications are checked on
    raw verdicts.
    """
    member_tol = DEFAULT_TOLERANCES.member_tol if member_tol is None else member_tol
    per_n = {}
    counterexample = None
    for n in n_range:
        violations = 0
        for i in range(trials):
            X = sample_strata(n, seed, i)
            scale = 1.0 + float(np.abs(X).max())
            thresh = -member_tol * scale
            mu = eigh(X).eigenvalues
            stages = derivative_root_stages(mu, n - 1)
            margins = [float(mu[0])] + [float(r[0]) for r in stages]
            members = [m >= thresh for m in margins]
            chain_ok = all(members[k - 1] <= members[k] for k in range(1, n))
            q_member = float(mu[0] + mu[1]) >= thresh
            trace_member = float(mu.sum()) >= thresh
            cross_ok = (
                (not members[1] or q_member)
                and (not q_member or trace_member)
                and (members[n - 1] == trace_member)
            )
            if not (chain_ok and cross_ok):
                violations += 1
                if counterexample is None:
                    counterexample = {
                        "n": n,
                        "trial": i,
                        "margins": margins,
                        "sample": _sample_json(X),
                    }
        per_n[str(n)] = {"trials": trials, "violations": violations}
    passed = all(stats["violations"] == 0 for stats in per_n.values())
    return {
        "name": "inclusions",
        "passed": passed,
        "trials": trials,
        "perN": per_n,
        "counterexample": counterexample,
    }


def identities_suite(
    n_range: range,
    trials: int = 500,
    seed: int = 0,
    identity_tol: float | None = None,
) -> dict:
    """Determinantal identities, block structure, and the exact value at I."""
    identity_tol = (
        DEFAULT_TOLERANCES.identity_tol if identity_tol is None else identity_tol
    )
    per_n = {}
    for n in n_range:
        ones = ones_perp_basis(n)
        canonical = canonical_traceless_basis(n, ones)
        reports = {
            "sanyal": sanyal_constant(ones, trials=trials, seed=seed, identity_tol=identity_tol),
            "mainCanonical": main_identity(canonical, trials=trials, seed=seed, identity_tol=identity_tol),
            "mainOrthonormal": main_identity(
                orthonormalize(canonical), trials=trials, seed=seed, identity_tol=identity_tol
            ),
        }
        block_ok = all(
            block_structure_check(sample_vector_strata(n, seed, i), ones, identity_tol)
            for i in range(max(1, trials // 10))
        )
        pairs = n * (n - 1) // 2
        q_exact = q_eval(np.eye(n)) == 2.0**pairs
        per_n[str(n)] = {
            **{key: report.to_json_dict() for key, report in reports.items()},
            "blockStructureOk": block_ok,
            "qAtIdentityExact": bool(q_exact),
            "passed": bool(
                all(report.passed for report in reports.values()) and block_ok and q_exact
            ),
        }
    passed = all(stats["passed"] for stats in per_n.values())
    return {
        "name": "identities",
        "passed": passed,
        "trials": trials,
        "identityTol": identity_tol,
        "perN": per_n,
    }


def run_suites(
    names,
    n_range: range,
    trials: int,
    seed: int,
    tol: float | None = None,
) -> dict:
    """Run the named campaigns and combine them into one report body."""
    results = {}
    for name in names:
        if name == "identities":
            results[name] = identities_suite(n_range, trials=trials, seed=seed, identity_tol=tol)
        elif name == "equivalence":
            results[name] = equivalence_suite(n_range, trials=trials, seed=seed, member_tol=tol)
        elif name == "inclusions":
            results[name] = inclusions_suite(n_range, trials=trials, seed=seed, member_tol=tol)
        else:
            raise ValueError(f"unknown suite {name!r}")
    return {
        "suites": results,
        "passed": all(result["passed"] for result in results.values()),
    }
