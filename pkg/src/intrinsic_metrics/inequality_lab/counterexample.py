"""Triangle-inequality counterexample for ``W = F_c o j`` on the unit disk, c < 1.

Collinear points ``x = -a``, ``y = a``, ``z = b`` on the real axis with
``0 < a < b < 1`` violate the triangle inequality exactly when
``H(a, b) = p(a) b + q(a) sqrt(1 - b) - r(a) < 0``. Since
``p(a) - r(a) -> sqrt(2)(c - 1) < 0`` as ``a -> 1``, pushing ``a`` and then
``b`` towards 1 always finds such a pair when ``c < 1``.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..domains import sample_points, unit_ball
from ..errors import DomainError, SearchFailure
from ..metrics import Base, MetricSpec, W_metric
from ..reports import VerificationReport, point_witness

# a and b stay below 1 - EDGE
EDGE = 1e-12


@dataclass(frozen=True)
class Counterexample:
    c: float
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    lhs: float
    rhs: float
    method: str = "construction"

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    def to_dict(self) -> dict:
        return {"c": self.c, **point_witness(x=self.x, y=self.y, z=self.z),
                "lhs": self.lhs, "rhs": self.rhs, "margin": self.margin,
                "method": self.method}


def p(c, y):
    return (1.0 / math.sqrt(1.0 - y) + 2.0 * c * y / ((1.0 - y) * math.sqrt(1.0 + y))
            - 1.0 / math.sqrt(1.0 + y))


def q(c, y):
    return 2.0 * y / math.sqrt((1.0 - y) * (1.0 + y))


def r(c, y):
    return y * (1.0 / math.sqrt(1.0 - y) + 2.0 * c * y / ((1.0 - y) * math.sqrt(1.0 + y))
                + 1.0 / math.sqrt(1.0 + y))


def H(c, y, z):
    return p(c, y) * z + q(c, y) * math.sqrt(1.0 - z) - r(c, y)


def p_minus_r(c, y):
    """``lim_{z -> 1} H(y, z)``, written without the 1/(1-y) cancellation."""
    return math.sqrt(1.0 - y) + 2.0 * c * y / math.sqrt(1.0 + y) - math.sqrt(1.0 + y)


def triangle_margin(c, x, y, z):
    """``W(x,z) - W(x,y) - W(y,z)`` for ``W = F_c o j`` on the unit disk."""
    spec = MetricSpec(Base.J, c, unit_ball(2))
    lhs = W_metric(spec, x, z)
    rhs = W_metric(spec, x, y) + W_metric(spec, y, z)
    return lhs, rhs


def _halving(start):
    # start, then points halving the distance to 1, stopping at 1 - EDGE
    v = start
    while 1.0 - v >= EDGE:
        yield v
        v = 1.0 - 0.5 * (1.0 - v)


def _construct(c, tol, trace):
    for a in _halving(0.5):
        pr = p_minus_r(c, a)
        trace.append(("a", a, pr))
        if pr >= 0.0:
            continue
        for b in _halving(1.0 - 0.5 * (1.0 - a)):
            hv = H(c, a, b)
            if hv >= 0.0:
                continue
            x, y, z = np.array([-a, 0.0]), np.array([a, 0.0]), np.array([b, 0.0])
            lhs, rhs = triangle_margin(c, x, y, z)
            trace.append(("b", b, hv, lhs - rhs))
            if lhs - rhs > tol.slack + tol.witness_margin:
                return Counterexample(c, x, y, z, lhs, rhs)
    return None


def _random_search(c, tol, seed, n_triples, trace):
    rng = np.random.default_rng(seed)
    dom = unit_ball(2)
    spec = MetricSpec(Base.J, c, dom)
    x, y, z = (sample_points(dom, n_triples, rng) for _ in range(3))
    margin = W_metric(spec, x, z) - W_metric(spec, x, y) - W_metric(spec, y, z)
    i = int(np.argmax(margin))
    trace.append(("random", n_triples, float(margin[i])))
    if margin[i] > tol.slack + tol.witness_margin:
        lhs, rhs = triangle_margin(c, x[i], y[i], z[i])
        return Counterexample(c, x[i], y[i], z[i], lhs, rhs, method="random")
    return None


def find_counterexample(c: float, tol: Tolerances = DEFAULT_TOLERANCES,
                        seed: int = 0, fallback_triples: int = 100_000) -> Counterexample:
    """Return points ``x, y, z`` in the unit disk with ``W(x,z) > W(x,y) + W(y,z)``.

    Runs the collinear construction first and falls back to a seeded random
    search. Raises SearchFailure, with the scan trace attached, if neither
    finds a margin above ``slack + witness_margin``; that is the expected
    outcome for ``c >= 1``.
    """
    if not c > 0.0:
        raise DomainError(f"c must be positive, got {c!r}")
    trace = []
    found = _construct(c, tol, trace)
    if found is None and fallback_triples:
        found = _random_search(c, tol, seed, fallback_triples, trace)
    if found is None:
        raise SearchFailure(f"no triangle-inequality counterexample for c = {c:g}", trace)
    return found


def counterexample_report(c: float, tol: Tolerances = DEFAULT_TOLERANCES,
                          seed: int = 0) -> VerificationReport:
    """Report form of the sharpness claim.

    ``c < 1``: a counterexample must exist. ``c >= 1``: the search must
    fail; a found triple is then a violation.
    """
    if c < 1.0:
        rep = VerificationReport(f"W-sharpness[c={c:g}]:exists", rng_seed=seed)
        try:
            found = find_counterexample(c, tol, seed)
        except SearchFailure as exc:
            rep.n_checked = len(exc.trace)
            rep.n_violations = 1
            return rep
        rep.n_checked = 1
        rep.witness = found.to_dict()
        return rep
    rep = VerificationReport(f"W-sharpness[c={c:g}]:none", rng_seed=seed)
    try:
        found = find_counterexample(c, tol, seed)
    except SearchFailure as exc:
        rep.n_checked = len(exc.trace)
        return rep
    rep.n_checked = 1
    rep.n_violations = 1
    rep.max_violation = found.margin
    rep.witness = found.to_dict()
    return rep
