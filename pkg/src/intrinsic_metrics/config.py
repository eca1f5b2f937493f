"""Numerical tolerances shared by every module.

All thresholds live in a single frozen record so the CLI can override them
in one place (``Tolerances.replace``) and reports stay reproducible.
"""

from dataclasses import dataclass, replace, asdict


@dataclass(frozen=True)
class Tolerances:
    # AGM stops when |a - b| <= agm_tol * a.
    agm_tol: float = 1e-15
    agm_max_iter: int = 40
    # |mu(r) - m| <= mu_inv_tol * max(1, m) for the Grötzsch inverse.
    mu_inv_tol: float = 1e-12
    mu_inv_max_iter: int = 200
    # Absolute slack for every non-strict inequality check.
    slack: float = 1e-12
    # Strict inequalities whose two sides agree this closely are counted as
    # near-equalities (warnings) instead of violations.
    near_equal: float = 1e-13
    # Tolerance for asserted equalities (e.g. attained upper bounds).
    equality: float = 1e-12
    # |g(t) - L(c)| at the last sample of the limit check.
    limit_tol: float = 1e-8
    # Witnesses of failure (counterexamples) must beat the slack by this much.
    witness_margin: float = 1e-12

    def replace(self, **changes) -> "Tolerances":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()
