"""Command-line front end.

Subcommands: ``eval``, ``verify``, ``counterexample``, ``plot``, ``distort``.
Exit status is 0 when every check passes, 1 on a violation or a failed
search, and 2 on usage or domain errors.
"""

import argparse
import json
import sys
from pathlib import Path

from .config import DEFAULT_TOLERANCES, Tolerances
from .distortion import (
    MobiusConjugated,
    Power,
    RadialStretch,
    check_lipschitz_transfer,
    check_mobius_invariance,
    check_schwarz_hyperbolic,
    check_schwarz_pick_strict,
    check_Wlambda_distortion,
)
from .domains import Kind, as_point, half_space, load_polygon, unit_ball, unit_square
from .errors import IntrinsicMetricsError, SearchFailure
from .inequality_lab import (
    DEFAULT_GRID,
    W_j,
    check_positivity_chain,
    check_Fc_double_bound,
    check_Fc_over_t_monotone,
    check_h_sandwich,
    check_j_rho,
    check_l_u_sandwich,
    check_limit_L,
    check_LU_bounds,
    check_metric_axioms,
    check_refined_upper,
    check_shifted_bounds,
    check_F1_bounds,
    counterexample_report,
    emit_figure_data,
    find_counterexample,
    find_triangle_violation,
    h_c,
)
from .metrics import Base, MetricSpec, W_metric, h_metric, j_metric, rho
from .reports import reports_to_json, to_plain
from .special_functions import check_special_identities

DEFAULT_SAMPLES = 100_000
TOLERANCE_FLAGS = ("slack", "near_equal", "equality", "limit_tol", "witness_margin", "mu_inv_tol")


def _sampled_domains():
    return [unit_ball(2), half_space(2), unit_square()]


def _cs(args, default):
    return [args.c] if args.c is not None else list(default)


def _suite_F1(a, tol):
    return [check_F1_bounds(d, a.samples, a.seed, tol) for d in _sampled_domains()]


def _suite_double_bound(a, tol):
    return [check_Fc_double_bound(DEFAULT_GRID.with_(c_values=_cs(a, (0.5, 1, 2, 10))), tol)]


def _suite_monotone(a, tol):
    return [check_Fc_over_t_monotone(c, DEFAULT_GRID, tol) for c in _cs(a, (0.5, 0.9, 1, 2, 10))]


def _suite_limit(a, tol):
    return [check_limit_L(c, tol) for c in _cs(a, (0.5, 1, 2))]


def _suite_refined(a, tol):
    return [check_refined_upper(DEFAULT_GRID.with_(c_values=_cs(a, DEFAULT_GRID.c_values)), tol)]


def _suite_positivity(a, tol):
    return [check_positivity_chain(tol=tol)]


def _suite_shifted(a, tol):
    return [check_shifted_bounds(DEFAULT_GRID.with_(c_values=_cs(a, (0.5, 0.75, 1, 2, 5, 10))), tol)]


def _suite_sandwich(a, tol):
    return [check_l_u_sandwich(DEFAULT_GRID.with_(c_values=_cs(a, (0.5, 0.75, 1, 2, 10))), tol)]


def _suite_LU(a, tol):
    return [check_LU_bounds(d, c, a.samples, a.seed, tol)
            for c in _cs(a, (1, 2, 10)) for d in _sampled_domains()]


def _suite_h_sandwich(a, tol):
    return [check_h_sandwich(d, c, a.samples, a.seed, tol=tol)
            for c in _cs(a, (0.5, 1, 2, 3)) for d in _sampled_domains()]


def _suite_h_axioms(a, tol):
    out = [check_metric_axioms(h_c(d, c), d, a.samples, a.seed, f"h-metric[{_tag(d)},c={c:g}]", tol)
           for c in _cs(a, (2, 3)) for d in _sampled_domains()]
    ball = unit_ball(2)
    out.append(find_triangle_violation(h_c(ball, 0.1), ball, a.samples, a.seed,
                                       "h-metric[ball2,c=0.1]", tol))
    return out


def _suite_W_axioms(a, tol):
    return [check_metric_axioms(W_j(d, c), d, a.samples, a.seed, f"W-metric[{_tag(d)},c={c:g}]", tol)
            for c in _cs(a, (1, 1.5, 2, 10)) for d in _sampled_domains()]


def _suite_counterexample(a, tol):
    return [counterexample_report(c, tol, a.seed) for c in _cs(a, (0.25, 0.5, 0.75, 0.9, 0.99, 1.0))]


def _suite_jrho(a, tol):
    return [check_j_rho(d, a.samples, a.seed, tol) for d in (unit_ball(2), unit_ball(3), half_space(2))]


def _suite_special(a, tol):
    return [check_special_identities(tol=tol)]


def _suite_schwarz(a, tol):
    maps = [Power(2), RadialStretch(2.0), RadialStretch(3.0),
            MobiusConjugated(RadialStretch(2.0), (0.3, -0.4))]
    out = [check_schwarz_hyperbolic(f, a.samples, a.seed, tol=tol) for f in maps]
    out += [check_schwarz_pick_strict(Power(m), a.samples, a.seed, tol=tol) for m in (2, 3)]
    return out


def _suite_distow(a, tol):
    cases = [(Power(2), 1.0), (RadialStretch(2.0), 1.0), (RadialStretch(2.0), 2.0),
             (MobiusConjugated(RadialStretch(2.0), (0.3, -0.4)), 2.0)]
    if a.lam is not None:
        cases = [(f, a.lam) for f, _ in cases]
    out = [check_Wlambda_distortion(f, lam, a.samples, a.seed, tol=tol) for f, lam in cases]
    out += [check_lipschitz_transfer(Power(2), lam, 1.0, a.samples, a.seed, tol)
            for lam in ((a.lam,) if a.lam is not None else (1.0, 2.0))]
    return out


def _suite_mobius(a, tol):
    lams = (a.lam,) if a.lam is not None else (1.0, 2.0)
    return [check_mobius_invariance(lam, 1000, a.seed, tol=tol) for lam in lams]


SUITES = {
    "thm1.2": _suite_F1,
    "prop-double-bound": _suite_double_bound,
    "lemma-monotone": _suite_monotone,
    "limit-L": _suite_limit,
    "lemma-refined-upper": _suite_refined,
    "appendix": _suite_positivity,
    "lemma-shifted": _suite_shifted,
    "lemma-sandwich": _suite_sandwich,
    "thm-LU": _suite_LU,
    "h-sandwich": _suite_h_sandwich,
    "h-metric-axioms": _suite_h_axioms,
    "W-metric-axioms": _suite_W_axioms,
    "counterexample": _suite_counterexample,
    "jrho": _suite_jrho,
    "special": _suite_special,
    "schwarz": _suite_schwarz,
    "distow": _suite_distow,
    "mobius": _suite_mobius,
}


def _tag(dom):
    return f"{dom.kind.value}{dom.dimension}"


def _parse_point(text):
    try:
        return as_point([float(v) for v in text.split(",")])
    except ValueError as exc:
        raise IntrinsicMetricsError(f"bad point {text!r}: expected comma-separated reals") from exc


def _domain(args, dimension):
    if args.domain_file is not None:
        return load_polygon(args.domain_file)
    kind = Kind(args.domain)
    if kind is Kind.UNIT_BALL:
        return unit_ball(dimension)
    if kind is Kind.HALF_SPACE:
        return half_space(dimension)
    raise IntrinsicMetricsError("--domain polygon needs --domain-file")


def _tolerances(args) -> Tolerances:
    changes = {k: getattr(args, k) for k in TOLERANCE_FLAGS if getattr(args, k) is not None}
    return DEFAULT_TOLERANCES.replace(**changes)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, newline="")


def _config(args, tol, **extra) -> dict:
    cfg = {"subcommand": args.command, "seed": args.seed, "tolerances": tol.to_dict()}
    for key in ("suite", "samples", "c", "lam", "K"):
        if hasattr(args, key):
            cfg["lambda" if key == "lam" else key] = getattr(args, key)
    cfg.update(extra)
    return cfg


def cmd_eval(args, tol):
    x, y = _parse_point(args.x), _parse_point(args.y)
    dom = _domain(args, x.shape[-1])
    c = 1.0 if args.c is None else args.c
    if args.metric == "j":
        value = j_metric(dom, x, y)
    elif args.metric == "h":
        value = h_metric(dom, 2.0 if args.c is None else args.c, x, y)
    elif args.metric == "rho":
        value = rho(dom, x, y)
    else:
        value = W_metric(MetricSpec(Base(args.base), c, dom), x, y)
    _emit(f"{value:.17g}\n", args.out)
    return 0


def cmd_verify(args, tol):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [r for name in names for r in SUITES[name](args, tol)]
    _emit(reports_to_json(reports, _config(args, tol)), args.out)
    for r in reports:
        if not r.passed:
            print(f"violation: {r.claim_id}", file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


def cmd_counterexample(args, tol):
    c = 0.5 if args.c is None else args.c
    try:
        found = find_counterexample(c, tol, args.seed)
    except SearchFailure as exc:
        print(f"search failed: {exc}", file=sys.stderr)
        return 1
    doc = {"config": _config(args, tol), "counterexample": found.to_dict()}
    _emit(json.dumps(to_plain(doc), indent=2) + "\n", args.out)
    return 0


def cmd_plot(args, tol):
    _emit(emit_figure_data(args.figure, args.c), args.out)
    return 0


def cmd_distort(args, tol):
    K = 2.0 if args.K is None else args.K
    lam = 1.0 if args.lam is None else args.lam
    f = Power(args.m) if args.map == "power" else RadialStretch(K)
    if args.a is not None:
        f = MobiusConjugated(f, tuple(_parse_point(args.a)))
    reports = [check_schwarz_hyperbolic(f, args.samples, args.seed, tol=tol),
               check_Wlambda_distortion(f, lam, args.samples, args.seed, tol=tol)]
    _emit(reports_to_json(reports, _config(args, tol, map=f.describe())), args.out)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    tols = common.add_argument_group("tolerance overrides")
    for name in TOLERANCE_FLAGS:
        tols.add_argument("--" + name.replace("_", "-"), dest=name, type=float, default=None)

    domain = argparse.ArgumentParser(add_help=False)
    domain.add_argument("--domain", choices=[k.value for k in Kind], default="ball")
    domain.add_argument("--domain-file", default=None, help="JSON array of polygon vertices")

    p = argparse.ArgumentParser(prog="intrinsic-metrics",
                                description="Intrinsic metrics: evaluation and numeric verification.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common, domain], help="evaluate one distance")
    e.add_argument("--metric", choices=["j", "h", "rho", "W"], default="W")
    e.add_argument("--base", choices=[b.value for b in Base], default="j",
                   help="base metric of W")
    e.add_argument("--c", type=float, default=None)
    e.add_argument("--x", required=True)
    e.add_argument("--y", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=["all", *SUITES], default="all")
    v.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    v.add_argument("--c", type=float, default=None, help="restrict c-parameterised suites to one c")
    v.add_argument("--lambda", dest="lam", type=float, default=None)

    c = sub.add_parser("counterexample", parents=[common], help="triangle-inequality counterexample")
    c.add_argument("--c", type=float, default=None)

    pl = sub.add_parser("plot", parents=[common], help="emit figure CSV data")
    pl.add_argument("figure", choices=["fig1", "fig2"])
    pl.add_argument("--c", type=float, default=None)

    d = sub.add_parser("distort", parents=[common], help="distortion checks for one test map")
    d.add_argument("--map", choices=["radial", "power"], default="radial")
    d.add_argument("--K", type=float, default=None)
    d.add_argument("--m", type=int, default=2)
    d.add_argument("--a", default=None, help="conjugate by the Moebius map T_a")
    d.add_argument("--lambda", dest="lam", type=float, default=None)
    d.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    return p


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "counterexample": cmd_counterexample,
            "plot": cmd_plot, "distort": cmd_distort}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        tol = _tolerances(args)
        return COMMANDS[args.command](args, tol)
    except (IntrinsicMetricsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
