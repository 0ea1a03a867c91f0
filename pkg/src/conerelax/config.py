"""Central numerical tolerance configuration.

Every threshold used by the package lives in one frozen record so callers
can tighten or relax them coherently instead of chasing scattered magic
numbers.  Functions accept a ``Tolerances`` instance and default to
``DEFAULT_TOLERANCES``.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    orth_tol: float = 1e-10     # max-norm slack for orthogonality checks
    recon_tol: float = 1e-9     # eigendecomposition reconstruction slack
    root_tol: float = 1e-11     # relative bracket width for bisection
    pd_tol: float = 1e-10       # smallest eigenvalue accepted as positive definite
    trace_tol: float = 1e-12    # tracelessness slack
    rank_tol: float = 1e-10     # Gram eigenvalue / pivot threshold for independence
    member_tol: float = 1e-9    # default membership slack for cone oracles
    identity_tol: float = 1e-8  # max relative residual accepted by identity checks
    generic_tol: float = 1e-6   # genericity threshold when estimating constants
    resample_budget: int = 100  # attempts before giving up on a generic sample

    def with_overrides(self, **kwargs) -> "Tolerances":
        return replace(self, **kwargs)


DEFAULT_TOLERANCES = Tolerances()
