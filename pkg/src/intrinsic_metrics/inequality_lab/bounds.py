"""Checks of the one-variable inequalities for ``F_c(t) = log(1 + 2c sinh(t/2))``.

Every checker evaluates both sides of an inequality on a ``GridSpec`` and
returns a :class:`VerificationReport`. Non-strict inequalities get the
absolute slack from the tolerance record; strict ones fail on ``lhs >= rhs``
except where the two sides agree to ``near_equal`` (counted as warnings).
"""

import math

import numpy as np
from scipy.optimize import brentq

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import DomainError, SearchFailure
from ..metrics import F_c, F_c_excess
from ..reports import VerificationReport
from .grid import DEFAULT_GRID, T_MAX, GridSpec

LOG_5_4 = math.log(1.25)


def _node_witness(c, t):
    def build(i):
        return {"c": float(c), "t": float(np.atleast_1d(t)[i])}
    return build


def _fmt(c):
    return f"{c:g}"


# --- c t / (2(1+c)) < F_c(t) < c t for c >= 1/2 ------------------------------

def check_Fc_double_bound(grid: GridSpec = DEFAULT_GRID,
                          tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    if any(c < 0.5 for c in grid.c_values):
        raise DomainError("the double bound is only claimed for c >= 1/2")
    t = grid.t_nodes()
    rep = VerificationReport("prop-double-bound")
    for c in grid.c_values:
        f = F_c(c, t)
        lower = c / (2.0 * (1.0 + c)) * t
        upper = c * t
        rep.record(lower - f, _node_witness(c, t), np.abs(lower - f) <= tol.near_equal, strict=True)
        rep.record(f - upper, _node_witness(c, t), np.abs(f - upper) <= tol.near_equal, strict=True)
    return rep


# --- F_c(t)/t is decreasing onto (1/2, c) iff c >= 1 ------------------------

def t1(c: float) -> float:
    """Unique zero of ``g'``: ``sinh(t/2) = 2c``, i.e. ``2 log(2c + sqrt(4c^2 + 1))``."""
    return 2.0 * math.log(2.0 * c + math.sqrt(4.0 * c * c + 1.0))


def eval_proof_functions(c: float, t):
    """Return ``(w, g)`` with ``w = 1 + 2c sinh(t/2)`` and
    ``g = c t cosh(t/2) / w - log w``, so that ``(F_c(t)/t)' = g / t^2``."""
    if not c > 0:
        raise DomainError("c must be positive")
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0) or np.any(t > T_MAX):
        raise DomainError(f"t must lie in (0, {T_MAX}]")
    w = 1.0 + 2.0 * c * np.sinh(0.5 * t)
    g = c * t * np.cosh(0.5 * t) / w - F_c(c, t)
    if w.ndim == 0:
        return float(w), float(g)
    return w, g


def g_prime(c: float, t):
    t = np.asarray(t, dtype=float)
    w = 1.0 + 2.0 * c * np.sinh(0.5 * t)
    return c * t / (2.0 * w * w) * (np.sinh(0.5 * t) - 2.0 * c)


def limit_L(c: float) -> float:
    """``lim_{t->oo} g(t) = log 2 - log(2c)``."""
    return math.log(2.0) - math.log(2.0 * c)


def t2(c: float) -> float:
    """Zero of ``g`` past ``t1`` for ``0 < c < 1``, where ``F_c(t)/t`` turns upward."""
    if not 0.0 < c < 1.0:
        raise DomainError("t2 only exists for 0 < c < 1")
    lo = t1(c)
    hi = 2.0 * lo
    while eval_proof_functions(c, hi)[1] <= 0.0:
        hi *= 2.0
        if hi > T_MAX:
            raise SearchFailure(f"no sign change of g below t = {T_MAX} for c = {c}")
    return brentq(lambda s: eval_proof_functions(c, s)[1], lo, hi, xtol=1e-14)


def _ratio_excess(c, t):
    # F_c(t)/t - 1/2, resolved even where F_c(t) rounds to t/2
    return F_c_excess(c, t) / t


def check_Fc_over_t_monotone(c: float, grid: GridSpec = DEFAULT_GRID,
                             tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """Check the monotonicity dichotomy of ``F_c(t)/t`` at one ``c``.

    ``c >= 1``: universal claim, strictly decreasing across consecutive
    nodes with values in ``(1/2, c)``.

    ``c < 1``: existence claim, some consecutive pair increases. The grid
    is extended towards ``t = 700`` (same node density) until an increase is
    seen; the witness records the pair and the turning point ``t2``.
    """
    t = grid.t_nodes()
    if np.any(np.diff(t) <= 0):
        raise DomainError("t nodes must be sorted ascending")
    if c >= 1.0:
        rep = VerificationReport(f"lemma-monotone[c={_fmt(c)}]")
        q = _ratio_excess(c, t)
        dq = np.diff(q)
        rep.record(dq, lambda i: {"c": c, "t": [float(t[i]), float(t[i + 1])]},
                   np.abs(dq) <= tol.near_equal * np.abs(q[:-1]), strict=True)
        rep.record(-q, _node_witness(c, t), strict=True)
        f = F_c(c, t)
        rep.record(f - c * t, _node_witness(c, t), np.abs(f - c * t) <= tol.near_equal, strict=True)
        return rep

    rep = VerificationReport(f"lemma-monotone[c={_fmt(c)}]:exists")
    turn = t2(c)
    density = grid.t_samples / (math.log(grid.t_range[1] / grid.t_range[0])
                                if grid.spacing == "log" else grid.t_range[1] - grid.t_range[0])
    t_max = grid.t_range[1]
    while True:
        q = _ratio_excess(c, t)
        dq = np.diff(q)
        rep.n_checked = dq.size
        up = np.flatnonzero(dq > tol.near_equal * np.abs(q[:-1]))
        if up.size:
            i = int(up[0])
            rep.witness = {"c": c, "t": [float(t[i]), float(t[i + 1])],
                           "ratio": [float(q[i] + 0.5), float(q[i + 1] + 0.5)], "t2": turn}
            return rep
        if t_max >= T_MAX:
            rep.n_violations = 1
            return rep
        new_max = min(2.0 * t_max, T_MAX)
        if grid.spacing == "log":
            extra = np.geomspace(t_max, new_max, max(2, int(density * math.log(new_max / t_max))))
        else:
            extra = np.linspace(t_max, new_max, max(2, int(density * (new_max - t_max))))
        t = np.concatenate([t, extra[1:]])
        t_max = new_max


def check_limit_L(c: float, tol: Tolerances = DEFAULT_TOLERANCES,
                  t_values=(20.0, 30.0, 40.0, 50.0)) -> VerificationReport:
    """``g(t)`` approaches ``log 2 - log(2c)`` monotonically; last error <= ``tol.limit_tol``."""
    t = np.asarray(t_values, dtype=float)
    _, g = eval_proof_functions(c, t)
    err = np.abs(np.atleast_1d(g) - limit_L(c))
    rep = VerificationReport(f"limit-L[c={_fmt(c)}]")
    rep.record(np.diff(err), lambda i: {"c": c, "t": float(t[i + 1]), "error": float(err[i + 1])})
    rep.record(err[-1] - tol.limit_tol, lambda i: {"c": c, "t": float(t[-1]), "error": float(err[-1])})
    rep.details["final_error"] = float(err[-1])
    return rep


# --- refined upper bound and its positivity chain ---------------------------

def refined_upper(c, t):
    """``(t^2 + (2c+1) t) / (2 (t+1))``, equivalently ``t/2 + c t/(t+1)``."""
    t = np.asarray(t, dtype=float)
    return 0.5 * t + c * t / (t + 1.0)


def E_t(c, t):
    """``e^{t/2} e^{ct/(t+1)} - 1 - c (e^{t/2} - e^{-t/2})``; positive iff the
    refined upper bound is strict."""
    t = np.asarray(t, dtype=float)
    return np.expm1(0.5 * t + c * t / (t + 1.0)) - 2.0 * c * np.sinh(0.5 * t)


def _log_ratio(t):
    # log(((t+1)/t)(1 - e^{-t}))
    return np.log1p(t) + np.log(-np.expm1(-t) / t)


def E_t_minimiser(t):
    """Minimiser of ``c -> E_t(c)``: ``((t+1)/t) log(((t+1)/t)(1 - e^{-t}))``."""
    t = np.asarray(t, dtype=float)
    return (t + 1.0) / t * _log_ratio(t)


def E_t_at_c0(t):
    """Closed form of ``E_t(c0)``."""
    t = np.asarray(t, dtype=float)
    return (t + 1.0) / t * (1.0 - _log_ratio(t)) * 2.0 * np.sinh(0.5 * t) - 1.0


def C(t):
    t = np.asarray(t, dtype=float)
    return (1.0 - _log_ratio(t)) * 2.0 * np.sinh(0.5 * t) - t / (t + 1.0)


def C_tilde(t):
    t = np.asarray(t, dtype=float)
    return -np.expm1(-0.5 * t) - _log_ratio(t)


def C_hat(t):
    t = np.asarray(t, dtype=float)
    return 2.0 * np.expm1(t) - 2.0 * t * (t + 1.0) + t * (t + 1.0) * 2.0 * np.sinh(0.5 * t)


def check_refined_upper(grid: GridSpec = DEFAULT_GRID,
                        tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """``F_c(t) <= (t^2 + (2c+1)t) / (2(t+1))`` on the grid, plus ``E_t(c) > 0``
    at every node, ``E_t(c0) > 0`` and ``C(t) > 0`` at every ``t`` node."""
    t = grid.t_nodes()
    rep = VerificationReport("lemma-refined-upper")
    for c in grid.c_values:
        rep.record(F_c(c, t) - refined_upper(c, t) - tol.slack, _node_witness(c, t))
        rep.record(-E_t(c, t), _node_witness(c, t), strict=True)
    rep.record(-E_t_at_c0(t), lambda i: {"c0": float(E_t_minimiser(t[i])), "t": float(t[i])},
               strict=True)
    rep.record(-C(t), lambda i: {"t": float(t[i])}, strict=True)
    return rep


def check_positivity_chain(t_range=(1e-3, 50.0), t_samples: int = 10_000,
                           tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """Positivity chain behind the refined bound.

    At every node: ``e^t - (t+1) > 0`` and ``1 - e^{-t} > t/(t+1)``;
    ``c0 > 0``; ``E_t(c0)`` matches its closed form and is below
    ``E_t(c0 +- delta)``; ``C, C~, C^ > 0`` and ``C >= C~ (e^{t/2} - e^{-t/2})``.
    """
    t = np.geomspace(*t_range, t_samples)
    rep = VerificationReport("appendix")
    wit = lambda i: {"t": float(t[i])}
    rep.record(-(np.expm1(t) - t), wit, strict=True)
    rep.record(t / (t + 1.0) + np.expm1(-t), wit, strict=True)
    c0 = E_t_minimiser(t)
    rep.record(-c0, wit, strict=True)
    e0 = E_t(c0, t)
    closed = E_t_at_c0(t)
    rep.record(np.abs(e0 - closed) - tol.equality * np.maximum(1.0, np.abs(closed)), wit)
    delta = 1e-3 * np.maximum(c0, 1e-3)
    rep.record(e0 - E_t(c0 + delta, t), wit, strict=True)
    rep.record(e0 - E_t(c0 - delta, t), wit, strict=True)
    rep.record(-closed, wit, strict=True)
    ct = C(t)
    rep.record(-ct, wit, strict=True)
    rep.record(-C_tilde(t), wit, strict=True)
    rep.record(-C_hat(t), wit, strict=True)
    lower = C_tilde(t) * 2.0 * np.sinh(0.5 * t)
    rep.record(lower - ct - tol.slack * np.maximum(1.0, np.abs(ct)), wit)
    return rep


# --- the two t/2-shifted bounds ---------------------------------------------

def shifted_lower(c, t):
    """``t/(t+1) log c + t/2``; below ``F_c(t)`` for ``c >= 1``."""
    t = np.asarray(t, dtype=float)
    return t / (t + 1.0) * math.log(c) + 0.5 * t


def shifted_upper(c, t):
    """``log(c + 1/(4c)) + t/2``; above ``F_c(t)`` for every ``c > 0`` with
    equality exactly at ``t = 2 log(2c)``."""
    t = np.asarray(t, dtype=float)
    return math.log(c + 0.25 / c) + 0.5 * t


def shifted_bounds_c0(t):
    """Critical point ``(t/(t+1) / (1 - e^{-t}))^{t+1}`` of ``c -> L_t(c)``; always < 1."""
    t = np.asarray(t, dtype=float)
    return np.exp((t + 1.0) * (np.log(t / (t + 1.0)) - np.log(-np.expm1(-t))))


def check_shifted_bounds(grid: GridSpec = DEFAULT_GRID,
                         tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    t = grid.t_nodes()
    rep = VerificationReport("lemma-shifted")
    for c in grid.c_values:
        f = F_c(c, t)
        if c >= 1.0:
            lo = shifted_lower(c, t)
            rep.record(lo - f, _node_witness(c, t), np.abs(lo - f) <= tol.near_equal, strict=True)
            # equality at t = 0
            rep.record(abs(float(shifted_lower(c, 0.0)) - float(F_c(c, 0.0))) - tol.equality,
                       lambda i: {"c": c, "t": 0.0})
        up = shifted_upper(c, t)
        rep.record(f - up - tol.slack, _node_witness(c, t))
        if c > 0.5:
            ts = 2.0 * math.log(2.0 * c)
            gap = abs(float(F_c(c, ts)) - (math.log(c + 0.25 / c) + math.log(2.0 * c)))
            rep.record(gap - tol.equality, lambda i: {"c": c, "t": ts})
    # the proof's critical point for L_t(c) lies below 1
    rep.record(shifted_bounds_c0(t) - 1.0, lambda i: {"t": float(t[i])}, strict=True)
    return rep


# --- l(c,t) < F_c(t) <= u(c,t) ----------------------------------------------

def l_bound(c, t):
    t = np.asarray(t, dtype=float)
    if c >= 1.0:
        return shifted_lower(c, t)
    return 0.5 * c * t


def u_branches(c, t):
    t = np.asarray(t, dtype=float)
    first = math.log(c + 0.25 / c) + 0.5 * t
    with np.errstate(over="ignore"):
        second = np.log1p(c * t) + c * np.expm1(t)
    return first, second


def u_bound(c, t):
    return np.minimum(*u_branches(c, t))


def check_l_u_sandwich(grid: GridSpec = DEFAULT_GRID,
                       tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    """``l < F_c <= u`` on the grid; ``F_c = u`` at ``t = 2 log(2c)`` for
    ``c > 1/2`` (via the first branch of ``u``) and nowhere else on the grid."""
    t = grid.t_nodes()
    rep = VerificationReport("lemma-sandwich")
    for c in grid.c_values:
        f = F_c(c, t)
        lo = l_bound(c, t)
        up = u_bound(c, t)
        rep.record(lo - f, _node_witness(c, t), np.abs(lo - f) <= tol.near_equal, strict=True)
        rep.record(f - up - tol.slack, _node_witness(c, t))
        attained = np.abs(f - up) <= tol.near_equal
        if c > 0.5:
            ts = 2.0 * math.log(2.0 * c)
            attained &= np.abs(t - ts) > 1e-6 * ts
            first, second = u_branches(c, ts)
            rep.record(abs(float(F_c(c, ts)) - float(first)) - tol.equality,
                       lambda i: {"c": c, "t": ts})
            rep.record(float(first) - float(second), lambda i: {"c": c, "t": ts}, strict=True)
        rep.record(np.where(attained, 1.0, -1.0), _node_witness(c, t))
    return rep
