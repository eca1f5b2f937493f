"""Checks over seeded random pairs and triples of points in a domain."""

import math

import numpy as np

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..domains import Domain, sample_points
from ..errors import DomainError
from ..metrics import F_c, h_metric, j_metric, rho
from ..reports import VerificationReport, point_witness

LOG_5_4 = math.log(1.25)
# points per vectorised batch; results do not depend on it
BATCH = 50_000


def _tag(dom: Domain) -> str:
    return f"{dom.kind.value}{dom.dimension}"


def _batches(total):
    done = 0
    while done < total:
        n = min(BATCH, total - done)
        yield n
        done += n


def sample_pairs(dom, n, rng):
    return sample_points(dom, n, rng), sample_points(dom, n, rng)


def _pair_witness(x, y):
    return lambda i: point_witness(x=x[i], y=y[i])


def crossing_point() -> float:
    """Where ``t`` and ``t/2 + log(5/4)`` meet: ``t = 2 log(5/4)``."""
    return 2.0 * LOG_5_4


def check_F1_bounds(dom: Domain, n_pairs: int, seed: int,
                    tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """``j/2 <= F_1(j) <= min(j, j/2 + log(5/4))`` for random pairs; the two
    upper branches cross at ``2 log(5/4)``."""
    rng = np.random.default_rng(seed)
    rep = VerificationReport(f"thm1.2[{_tag(dom)}]", rng_seed=seed)
    for n in _batches(n_pairs):
        x, y = sample_pairs(dom, n, rng)
        j = j_metric(dom, x, y)
        w = F_c(1.0, j)
        wit = _pair_witness(x, y)
        rep.record(0.5 * j - w - tol.slack, wit)
        rep.record(w - j - tol.slack, wit)
        rep.record(w - (0.5 * j + LOG_5_4) - tol.slack, wit)
    ts = crossing_point()
    rep.record(abs(ts - (0.5 * ts + LOG_5_4)) - 1e-14, lambda i: {"t": ts})
    return rep


def LU_factors(c: float, j):
    j = np.asarray(j, dtype=float)
    lower = 0.5 + math.log(c) / (1.0 + j)
    upper = (j + (2.0 * c + 1.0)) / (2.0 * (1.0 + j))
    return lower, upper


def check_LU_bounds(dom: Domain, c: float, n_pairs: int, seed: int,
                    tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """``L j <= W <= U j`` with ``L = 1/2 + log c / (1+j)`` and
    ``U = (j + 2c + 1) / (2 (1+j))``, for ``c >= 1``."""
    if c < 1.0:
        raise DomainError("the L/U bounds are claimed for c >= 1")
    rng = np.random.default_rng(seed)
    rep = VerificationReport(f"thm-LU[{_tag(dom)},c={c:g}]", rng_seed=seed)
    for n in _batches(n_pairs):
        x, y = sample_pairs(dom, n, rng)
        j = j_metric(dom, x, y)
        w = F_c(c, j)
        lower, upper = LU_factors(c, j)
        wit = _pair_witness(x, y)
        rep.record(lower * j - w - tol.slack, wit)
        rep.record(w - upper * j - tol.slack, wit)
    return rep


def check_j_rho(dom: Domain, n_pairs: int, seed: int,
                tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """``j <= rho <= 2 j`` on the ball or half-space."""
    rng = np.random.default_rng(seed)
    rep = VerificationReport(f"jrho[{_tag(dom)}]", rng_seed=seed)
    for n in _batches(n_pairs):
        x, y = sample_pairs(dom, n, rng)
        j = j_metric(dom, x, y)
        r = rho(dom, x, y)
        wit = _pair_witness(x, y)
        rep.record(j - r - tol.slack, wit)
        rep.record(r - 2.0 * j - tol.slack, wit)
    return rep


def check_h_sandwich(dom: Domain, c: float, n_pairs: int, seed: int, upper: bool | None = None,
                     tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """``F_c(j) <= h_{D,c} <= c j`` for random pairs.

    The lower bound holds for every ``c > 0``. The upper bound needs
    ``c >= 1``: at ``d(x) = d(y)`` it reads ``log(1 + cX) <= c log(1 + X)``,
    which Bernoulli's inequality reverses for ``c < 1``. By default it is
    checked only when ``c >= 1``; pass ``upper=True`` to force it.
    """
    if not c > 0.0:
        raise DomainError(f"c must be positive, got {c!r}")
    upper = c >= 1.0 if upper is None else upper
    rng = np.random.default_rng(seed)
    rep = VerificationReport(f"h-sandwich[{_tag(dom)},c={c:g}]", rng_seed=seed)
    for n in _batches(n_pairs):
        x, y = sample_pairs(dom, n, rng)
        j = j_metric(dom, x, y)
        h = h_metric(dom, c, x, y)
        wit = _pair_witness(x, y)
        rep.record(F_c(c, j) - h - tol.slack, wit)
        if upper:
            rep.record(h - c * j - tol.slack, wit)
    rep.details["upper_checked"] = upper
    return rep


def W_j(dom: Domain, c: float):
    return lambda x, y: F_c(c, j_metric(dom, x, y))


def h_c(dom: Domain, c: float):
    return lambda x, y: h_metric(dom, c, x, y)


def check_metric_axioms(dist, dom: Domain, n_triples: int, seed: int, claim_id: str,
                        tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """Metric axioms of ``dist`` over random triples.

    Symmetry is exact (bitwise), ``d(x, x) = 0``, ``d(x, y) > 0`` for
    ``x != y``, and ``d(x, z) <= d(x, y) + d(y, z) + slack``.
    """
    rng = np.random.default_rng(seed)
    rep = VerificationReport(claim_id, rng_seed=seed)
    for n in _batches(n_triples):
        x = sample_points(dom, n, rng)
        y = sample_points(dom, n, rng)
        z = sample_points(dom, n, rng)
        dxy, dyz, dxz = dist(x, y), dist(y, z), dist(x, z)
        wit = lambda i: point_witness(x=x[i], y=y[i], z=z[i])
        rep.record(np.where(dxy != dist(y, x), 1.0, -1.0), wit)
        rep.record(np.abs(dist(x, x)), wit, strict=False)
        distinct = np.any(x != y, axis=-1)
        rep.record(np.where(distinct, -dxy, -1.0), wit, strict=True)
        rep.record(dxz - dxy - dyz - tol.slack, wit)
    return rep


def find_triangle_violation(dist, dom: Domain, n_triples: int, seed: int, claim_id: str,
                            tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """Existence claim: some sampled triple breaks the triangle inequality
    by more than ``slack + witness_margin``.

    Stops at the first batch that contains one and keeps the triple with the
    largest margin from that batch.
    """
    rng = np.random.default_rng(seed)
    rep = VerificationReport(f"{claim_id}:exists", rng_seed=seed)
    for n in _batches(n_triples):
        x = sample_points(dom, n, rng)
        y = sample_points(dom, n, rng)
        z = sample_points(dom, n, rng)
        margin = dist(x, z) - dist(x, y) - dist(y, z)
        rep.n_checked += n
        i = int(np.argmax(margin))
        if margin[i] > tol.slack + tol.witness_margin:
            rep.witness = {**point_witness(x=x[i], y=y[i], z=z[i]), "margin": float(margin[i])}
            return rep
    rep.n_violations = 1
    return rep

