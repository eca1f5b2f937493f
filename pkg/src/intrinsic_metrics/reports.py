"""Verification reports and how they merge and serialize."""

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

__all__ = ["VerificationReport", "merge_reports", "reports_to_json", "point_witness", "to_plain"]

JSON_FIELDS = ("claim_id", "n_checked", "n_violations", "max_violation", "witness", "rng_seed")


def to_plain(value):
    # numpy scalars/arrays -> JSON-native types
    if isinstance(value, dict):
        return {k: to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    return value


def point_witness(**points) -> dict:
    return {k: [float(c) for c in np.asarray(v).ravel()] for k, v in points.items()}


@dataclass
class VerificationReport:
    """Outcome of one checked claim.

    For universal claims ("for all nodes ...") ``witness`` is the first
    violating node and is present exactly when ``n_violations > 0``. For
    existence claims (ids ending in ``:exists``) the search result is kept
    in ``witness`` and ``n_violations`` is 1 only when nothing was found.

    ``near_equal`` counts strict inequalities whose sides agreed to within
    the near-equality tolerance; they are warnings, not violations, and are
    not part of the JSON form.
    """

    claim_id: str
    n_checked: int = 0
    n_violations: int = 0
    max_violation: float = 0.0
    witness: Any = None
    rng_seed: int | None = None
    near_equal: int = field(default=0, compare=False)
    details: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return self.n_violations == 0

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "n_checked": int(self.n_checked),
            "n_violations": int(self.n_violations),
            "max_violation": float(self.max_violation),
            "witness": to_plain(self.witness),
            "rng_seed": self.rng_seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f", {self.near_equal} near-equal" if self.near_equal else ""
        return (f"{status} {self.claim_id}: {self.n_violations}/{self.n_checked} violations, "
                f"max {self.max_violation:.3g}{extra}")

    def record(self, excess, witness_fn=None, near_equal=None, strict=False):
        """Fold a batch of signed excesses (``lhs - allowed``) into the report.

        Entries with ``excess > 0`` (``>= 0`` when ``strict``) are violations,
        unless ``near_equal`` marks them as tolerated. ``witness_fn(i)`` builds
        the witness for batch index ``i`` and is only called for the first
        violation overall.
        """
        excess = np.atleast_1d(np.asarray(excess, dtype=float))
        bad = excess >= 0 if strict else excess > 0
        if near_equal is not None:
            tolerated = bad & np.atleast_1d(near_equal)
            self.near_equal += int(np.count_nonzero(tolerated))
            bad &= ~tolerated
        bad |= np.isnan(excess)
        self.n_checked += excess.size
        n_bad = int(np.count_nonzero(bad))
        if n_bad:
            worst = np.where(np.isnan(excess), np.inf, excess)[bad].max()
            self.max_violation = max(self.max_violation, float(worst))
            if self.witness is None and witness_fn is not None:
                self.witness = witness_fn(int(np.flatnonzero(bad)[0]))
            self.n_violations += n_bad
        return self


def merge_reports(parts, claim_id=None) -> VerificationReport:
    """Associative merge: counts add, max_violation is the max, the first
    witness in order wins."""
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to merge")
    out = VerificationReport(claim_id or parts[0].claim_id, rng_seed=parts[0].rng_seed)
    for p in parts:
        out.n_checked += p.n_checked
        out.n_violations += p.n_violations
        out.max_violation = max(out.max_violation, p.max_violation)
        out.near_equal += p.near_equal
        if out.witness is None:
            out.witness = p.witness
    return out


def reports_to_json(reports, config: dict | None = None) -> str:
    """Deterministic JSON document: the resolved config plus one object per claim."""
    doc = {"config": to_plain(config or {}), "reports": [r.to_dict() for r in reports]}
    return json.dumps(doc, indent=2) + "\n"
