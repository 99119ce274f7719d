"""Command-line interface for shot planning and validation.

Subcommands:
  shots     shot formulas from a fidelity or trace-distance target
  qcb       Chernoff quantity, fidelity and trace distance of two states
  chisq     chi-square shot plan from w^2, a fidelity, or distributions
  noise     binomial planning (plan) and the exact decision rule (decide)
  budget    program-level Bures-angle allocation from a spec file
  validate  Monte Carlo check of a formula against its simulated truth
  curve     CSV sweeps of the shot formulas for plotting

Exit codes: 0 success, 1 validation failure or infeasible strict budget,
2 input or domain error, 3 degenerate input (nothing to distinguish).
Tables render at 6 significant digits; --json emits one JSON document on
stdout with full precision and nothing else.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass

from .errors import DegenerateStates, ShotBudgetError
from . import budget as budget_mod
from . import montecarlo as mc
from . import shot_estimators as est
from . import stat_power as sp
from . import states as st

__all__ = ["TestPlanParams", "CurveRequest", "main", "entry"]


@dataclass(frozen=True)
class TestPlanParams:
    """Error tolerances shared by the planning commands."""

    p_e: float = 0.05
    alpha: float = 0.01
    beta: float = 0.01
    regime_factor: float = 1.0
    conservative: bool = False


@dataclass(frozen=True)
class CurveRequest:
    """One CSV sweep: grid bounds plus the fixed test parameters."""

    curve: str
    start: float
    stop: float
    points: int
    params: TestPlanParams
    bins: tuple[int, ...] = ()
    q1_values: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.points < 2:
            raise ShotBudgetError(f"curve needs at least 2 points, got {self.points}")
        if not self.start < self.stop:
            raise ShotBudgetError(f"curve needs start < stop, got [{self.start}, {self.stop}]")


def _sig6(value: float) -> str:
    return f"{value:.6g}"


def _print_table(headers: list[str], rows: list[list[str]]) -> None:
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    print(fmt.format(*headers))
    for row in rows:
        print(fmt.format(*row))


def _jsonable(value):
    # strict JSON has no Infinity/NaN literals; map non-finite floats to null
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit_json(doc: dict) -> None:
    print(json.dumps(_jsonable(doc), indent=2, allow_nan=False))


def _estimate_row(label: str, e: est.ShotEstimate) -> list[str]:
    return [label, _sig6(e.raw), str(e.shots), e.interpretation]


def _estimate_doc(e: est.ShotEstimate) -> dict:
    return {
        "formula": e.formula.value,
        "raw": e.raw,
        "shots": e.shots,
        "interpretation": e.interpretation,
    }


# ---------------------------------------------------------------------------
# shots


def _fidelity_estimates(fid: float, params: TestPlanParams, which: str) -> list[est.ShotEstimate]:
    out: list[est.ShotEstimate] = []
    c = params.conservative
    if which in ("all", "pure"):
        out.append(est.shots_pure(fid, params.p_e, conservative=c))
    if which in ("all", "inverse"):
        if params.regime_factor > 1.0:
            out.append(est.shots_inverse_real(fid, params.p_e, params.regime_factor, conservative=c))
        else:
            out.append(est.shots_inverse_ideal(fid, params.p_e, conservative=c))
    if which in ("all", "swap"):
        if params.regime_factor > 1.0:
            out.append(est.shots_swap_real(fid, params.p_e, params.regime_factor, conservative=c))
        else:
            out.append(est.shots_swap_ideal(fid, params.p_e, conservative=c))
    if which in ("all", "mixed"):
        bounds = est.shots_mixed_bounds(fid, params.p_e, conservative=c)
        out.extend([bounds.lower, bounds.upper])
    return out


def _trace_estimates(dist: float, params: TestPlanParams, which: str) -> list[est.ShotEstimate]:
    out: list[est.ShotEstimate] = []
    c = params.conservative
    if which in ("all", "pure"):
        out.append(est.shots_pure_from_trace_distance(dist, params.p_e, conservative=c))
    if which in ("all", "pure-mixed"):
        bounds = est.shots_pure_mixed_bounds_from_trace_distance(dist, params.p_e, conservative=c)
        out.extend([bounds.lower, bounds.upper])
    if which in ("all", "mixed"):
        bounds = est.shots_mixed_bounds_from_trace_distance(dist, params.p_e, conservative=c)
        out.extend([bounds.lower, bounds.upper])
    return out


def cmd_shots(args: argparse.Namespace) -> int:
    params = TestPlanParams(
        p_e=args.pe, regime_factor=args.regime_factor, conservative=args.conservative
    )
    if (args.fidelity is None) == (args.trace_distance is None):
        raise ShotBudgetError("provide exactly one of --fidelity or --trace-distance")
    if args.fidelity is not None:
        estimates = _fidelity_estimates(args.fidelity, params, args.test)
        source = {"fidelity": args.fidelity}
    else:
        estimates = _trace_estimates(args.trace_distance, params, args.test)
        source = {"trace_distance": args.trace_distance}
    if args.json:
        _emit_json(
            {
                "input": {**source, "p_e": params.p_e, "regime_factor": params.regime_factor},
                "estimates": [_estimate_doc(e) for e in estimates],
            }
        )
    else:
        _print_table(
            ["formula", "raw", "shots", "interpretation"],
            [_estimate_row(e.formula.value, e) for e in estimates],
        )
    return 0


# ---------------------------------------------------------------------------
# qcb


def cmd_qcb(args: argparse.Namespace) -> int:
    state_a = st.load_state(args.state_a)
    state_b = st.load_state(args.state_b)
    result = st.qcb_q(state_a, state_b)
    fid = st.fidelity(state_a, state_b)
    dist = st.trace_distance(state_a, state_b)
    q_lo, q_hi = st.q_bounds_mixed(fid)

    doc: dict = {
        "q": result.q,
        "s_star": result.s_star,
        "exponent": result.exponent,
        "fidelity": fid,
        "trace_distance": dist,
        "q_bounds_from_fidelity": [q_lo, q_hi],
    }
    notice = None
    code = 0
    if args.pe is not None:
        if result.q >= 1.0:
            notice = "states are indistinguishable (Q = 1); no finite shot count separates them"
            code = 3
        elif result.q == 0.0:
            doc["shots"] = {"formula": "qcb", "raw": 0.0, "shots": 1}
            notice = "orthogonal supports (Q = 0); a single shot distinguishes the states"
        else:
            doc["shots"] = _estimate_doc(est.shots_from_q(result.q, args.pe))
    if args.json:
        if notice is not None:
            doc["notice"] = notice
        _emit_json(doc)
    else:
        rows = [
            ["Q", _sig6(result.q)],
            ["s_star", _sig6(result.s_star)],
            ["exponent", _sig6(result.exponent)],
            ["fidelity", _sig6(fid)],
            ["trace_distance", _sig6(dist)],
            ["Q_lower(F)", _sig6(q_lo)],
            ["Q_upper(F)", _sig6(q_hi)],
        ]
        if "shots" in doc:
            rows.append(["shots", str(doc["shots"]["shots"])])
        _print_table(["quantity", "value"], rows)
    if notice is not None:
        print(notice, file=sys.stderr)
    return code


# ---------------------------------------------------------------------------
# chisq


def cmd_chisq(args: argparse.Namespace) -> int:
    sources = [args.w2 is not None, args.fidelity is not None, args.p is not None or args.q is not None]
    if sum(sources) != 1:
        raise ShotBudgetError("provide exactly one of --w2, --fidelity, or --p with --q")
    if args.w2 is not None:
        w2 = args.w2
        source = {"w2": w2}
    elif args.fidelity is not None:
        if args.case == "attaining":
            w2 = sp.w2_fidelity_attaining(args.fidelity)
        else:
            w2 = sp.w2_small_discrepancy(args.fidelity)
        source = {"fidelity": args.fidelity, "case": args.case}
    bins = args.bins
    q_dist = None
    if args.p is not None or args.q is not None:
        if args.p is None or args.q is None:
            raise ShotBudgetError("distribution mode needs both --p and --q")
        q_dist = sp.load_distribution(args.q)
        w2 = sp.chi2_distance(sp.load_distribution(args.p), q_dist)
        source = {"p": args.p, "q": args.q}
        bins = q_dist.k  # bin count is a property of the data, not a flag
    plan = sp.shots_chisq(w2, bins, args.alpha, args.beta)
    warnings = () if q_dist is None else sp.chisq_validity(plan.shots, q_dist)
    if args.json:
        _emit_json(
            {
                "source": source,
                "bins": plan.bins,
                "alpha": plan.alpha,
                "beta": plan.beta,
                "noncentrality": plan.noncentrality,
                "w2": plan.w2,
                "raw": plan.raw,
                "shots": plan.shots,
                "warnings": list(warnings),
            }
        )
    else:
        _print_table(
            ["quantity", "value"],
            [
                ["bins", str(plan.bins)],
                ["alpha", _sig6(plan.alpha)],
                ["beta", _sig6(plan.beta)],
                ["noncentrality", _sig6(plan.noncentrality)],
                ["w2", _sig6(plan.w2)],
                ["raw", _sig6(plan.raw)],
                ["shots", str(plan.shots)],
            ],
        )
        for warning in warnings:
            print(f"warning: {warning}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# noise


def cmd_noise(args: argparse.Namespace) -> int:
    if args.mode == "plan":
        if args.q1 is None:
            raise ShotBudgetError("plan mode needs --q1")
        plan = sp.two_proportion_shots(
            args.q0, args.q1, args.alpha, args.beta, one_sided=not args.two_sided
        )
        if args.json:
            _emit_json(asdict(plan))
        else:
            _print_table(
                ["quantity", "value"],
                [
                    ["q0", _sig6(plan.q0)],
                    ["q1", _sig6(plan.q1)],
                    ["alpha", _sig6(plan.alpha)],
                    ["beta", _sig6(plan.beta)],
                    ["sided", "one" if plan.one_sided else "two"],
                    ["raw", _sig6(plan.raw)],
                    ["shots", str(plan.shots)],
                ],
            )
        return 0
    if args.zeros is None or args.shots is None:
        raise ShotBudgetError("decide mode needs --zeros and --shots")
    reject, p_value = sp.binomial_decision(args.zeros, args.shots, args.q0, args.alpha)
    if args.json:
        _emit_json(
            {
                "mode": "decide",
                "zeros": args.zeros,
                "shots": args.shots,
                "q0": args.q0,
                "alpha": args.alpha,
                "p_value": p_value,
                "reject": reject,
            }
        )
    else:
        verdict = "REJECT (success rate dropped below baseline)" if reject else "no reject"
        print(f"p_value = {_sig6(p_value)}  ->  {verdict}")
    return 0


# ---------------------------------------------------------------------------
# budget


def _allocation_doc(a: budget_mod.BlockAllocation) -> dict:
    doc = asdict(a)
    doc["infeasible"] = list(a.infeasible)
    return doc


def cmd_budget(args: argparse.Namespace) -> int:
    spec = budget_mod.load_program_spec(args.spec)
    report = budget_mod.allocate_program(spec)
    if args.out == "json":
        doc = {
            "f_prog": report.f_prog,
            "p_e": report.p_e,
            "regime_factor": report.regime_factor,
            "chisq": {
                "bins": report.chisq_bins,
                "alpha": report.chisq_alpha,
                "beta": report.chisq_beta,
                "noncentrality": report.noncentrality,
            },
            "theta_star": report.theta_star,
            "total_weight": report.total_weight,
            "total_angle": report.total_angle,
            "blocks": [_allocation_doc(a) for a in report.allocations],
            "totals": report.totals,
        }
        _emit_json(doc)
    elif args.out == "csv":
        header = (
            "name,multiplicity,weight,theta,f_target,"
            "shots_inverse,shots_swap,shots_chisq_small,shots_chisq_attaining,infeasible"
        )
        print(header)
        for a in report.allocations:
            print(
                f"{a.name},{a.multiplicity},{a.weight!r},{a.theta!r},{a.f_target!r},"
                f"{a.shots_inverse},{a.shots_swap},{a.shots_chisq_small},"
                f"{a.shots_chisq_attaining},{'|'.join(a.infeasible)}"
            )
    else:
        rows = []
        for a in report.allocations:
            rows.append(
                [
                    a.name,
                    str(a.multiplicity),
                    _sig6(a.weight),
                    _sig6(a.theta),
                    f"{a.f_target:.10f}",
                    str(a.shots_inverse),
                    str(a.shots_swap),
                    str(a.shots_chisq_small),
                    str(a.shots_chisq_attaining),
                    ",".join(a.infeasible) or "-",
                ]
            )
        _print_table(
            ["block", "n", "weight", "theta", "f_target",
             "N_inverse", "N_swap", "N_chi2_small", "N_chi2_attain", "infeasible"],
            rows,
        )
        print(f"theta_star   {_sig6(report.theta_star)}")
        print(f"total_angle  {_sig6(report.total_angle)}")
        for kind, total in report.totals.items():
            print(f"total_{kind}  {total}")
    if args.strict and report.any_infeasible:
        print("budget infeasible: some shot counts exceed 2^63", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# validate


def cmd_validate(args: argparse.Namespace) -> int:
    config = mc.McConfig(trials=args.trials, seed=args.seed)
    if args.scenario == "inverse":
        if args.fidelity is None or args.shots is None:
            raise ShotBudgetError("inverse scenario needs --fidelity and --shots")
        result = mc.simulate_inverse_miss_rate(args.fidelity, args.shots, config)
        expected = args.fidelity**args.shots
    elif args.scenario == "swap":
        if args.fidelity is None or args.shots is None:
            raise ShotBudgetError("swap scenario needs --fidelity and --shots")
        result = mc.simulate_swap_miss_rate(args.fidelity, args.shots, config)
        expected = (0.5 + 0.5 * args.fidelity) ** args.shots
    elif args.scenario == "chisq":
        if args.p is None or args.q is None or args.shots is None:
            raise ShotBudgetError("chisq scenario needs --p, --q and --shots")
        p_dist = sp.load_distribution(args.p)
        q_dist = sp.load_distribution(args.q)
        result = mc.simulate_chisq_power(p_dist, q_dist, args.shots, args.alpha, config)
        w2 = sp.chi2_distance(p_dist, q_dist)
        if w2 == 0.0:
            expected = args.alpha
        else:
            crit = sp.chi2_quantile(1.0 - args.alpha, float(q_dist.k - 1))
            expected = 1.0 - sp.noncentral_chi2_cdf(crit, float(q_dist.k - 1), args.shots * w2)
    else:
        if args.q0 is None or args.q1 is None or args.shots is None:
            raise ShotBudgetError("binomial scenario needs --q0, --q1 and --shots")
        result = mc.simulate_binomial_detection(args.q0, args.q1, args.shots, args.alpha, config)
        threshold = sp.binomial_rejection_threshold(args.shots, args.q0, args.alpha)
        if threshold < 0:
            expected = 0.0
        else:
            _, expected = sp.binomial_decision(threshold, args.shots, args.q1, 0.5)
    se_expected = math.sqrt(expected * (1.0 - expected) / args.trials)
    band = 4.0 * se_expected
    diff = abs(result.estimate - expected)
    passed = diff <= band if band > 0.0 else result.estimate == expected
    verdict = "PASS" if passed else "FAIL"
    if args.json:
        _emit_json(
            {
                "scenario": args.scenario,
                "trials": result.trials,
                "seed": args.seed,
                "estimate": result.estimate,
                "expected": expected,
                "std_error": se_expected,
                "band_4se": band,
                "pass": passed,
                "warnings": list(result.warnings),
            }
        )
    else:
        print(
            f"{args.scenario}: estimate={_sig6(result.estimate)} expected={_sig6(expected)} "
            f"band(4SE)={_sig6(band)} {verdict}"
        )
        for warning in result.warnings:
            print(f"warning: {warning}", file=sys.stderr)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# curve


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError:
        raise ShotBudgetError(f"expected a comma-separated integer list, got {text!r}") from None


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x)
    except ValueError:
        raise ShotBudgetError(f"expected a comma-separated number list, got {text!r}") from None


_CURVE_DEFAULTS = {
    "fid_vs_shots": (0.001, 0.99999, 0.05),
    "test_comparison": (0.900, 0.995, 0.01),
    "noise_binomial": (0.991, 1.000, 0.01),
    "trace_vs_shots": (0.001, 0.999, 0.05),
}


def _grid(request: CurveRequest) -> list[float]:
    step = (request.stop - request.start) / (request.points - 1)
    return [request.start + i * step for i in range(request.points)]


def emit_curve(request: CurveRequest, out=None) -> None:
    """Write one curve as CSV (header plus one row per grid point)."""
    out = out or sys.stdout
    params = request.params

    def write(cells):
        print(",".join(cells), file=out)
    if request.curve == "fid_vs_shots":
        write(["F", "one_minus_F", "n_pure", "n_mixed_lo", "n_mixed_hi"])
        for f in _grid(request):
            bounds = est.shots_mixed_bounds(f, params.p_e)
            write(
                [
                    repr(f),
                    repr(1.0 - f),
                    str(est.shots_pure(f, params.p_e).shots),
                    str(bounds.lower.shots),
                    str(bounds.upper.shots),
                ]
            )
    elif request.curve == "test_comparison":
        lams = {k: sp.lambda_noncentral(k - 1, params.alpha, 1.0 - params.beta) for k in request.bins}
        header = ["F", "n_inverse", "n_swap"]
        for k in request.bins:
            header += [f"n_chisq_small_k{k}", f"n_chisq_attaining_k{k}"]
        write(header)
        for f in _grid(request):
            row = [
                repr(f),
                str(est.shots_inverse_ideal(f, params.p_e).shots),
                str(est.shots_swap_ideal(f, params.p_e).shots),
            ]
            small = sp.w2_small_discrepancy(f)
            attain = sp.w2_fidelity_attaining(f)
            for k in request.bins:
                row.append(str(max(1, math.ceil(lams[k] / small))))
                row.append(str(max(1, math.ceil(lams[k] / attain))))
            write(row)
    elif request.curve == "noise_binomial":
        header = ["q0"]
        for q1 in request.q1_values:
            header += [f"n_binomial_q1_{q1:g}", f"n_inverse_real_q1_{q1:g}", f"n_swap_real_q1_{q1:g}"]
        write(header)
        inverse_ref = {
            q1: est.shots_inverse_real(q1, params.p_e, params.regime_factor).shots
            for q1 in request.q1_values
        }
        swap_ref = {
            q1: est.shots_swap_real(q1, params.p_e, params.regime_factor).shots
            for q1 in request.q1_values
        }
        for q0 in _grid(request):
            row = [repr(q0)]
            for q1 in request.q1_values:
                plan = sp.two_proportion_shots(q0, q1, params.alpha, params.beta)
                row += [str(plan.shots), str(inverse_ref[q1]), str(swap_ref[q1])]
            write(row)
    elif request.curve == "trace_vs_shots":
        write(["T", "one_minus_T", "n_pure", "n_pm_lo", "n_pm_hi", "n_mixed_lo", "n_mixed_hi"])
        for t in _grid(request):
            pm = est.shots_pure_mixed_bounds_from_trace_distance(t, params.p_e)
            mixed = est.shots_mixed_bounds_from_trace_distance(t, params.p_e)
            write(
                [
                    repr(t),
                    repr(1.0 - t),
                    str(est.shots_pure_from_trace_distance(t, params.p_e).shots),
                    str(pm.lower.shots),
                    str(pm.upper.shots),
                    str(mixed.lower.shots),
                    str(mixed.upper.shots),
                ]
            )
    else:
        raise ShotBudgetError(f"unknown curve {request.curve!r}")


def cmd_curve(args: argparse.Namespace) -> int:
    defaults = _CURVE_DEFAULTS[args.curve]
    start = defaults[0] if args.start is None else args.start
    stop = defaults[1] if args.stop is None else args.stop
    p_e = defaults[2] if args.pe is None else args.pe
    request = CurveRequest(
        curve=args.curve,
        start=start,
        stop=stop,
        points=args.points,
        params=TestPlanParams(
            p_e=p_e, alpha=args.alpha, beta=args.beta, regime_factor=args.regime_factor
        ),
        bins=_parse_int_list(args.bins),
        q1_values=_parse_float_list(args.q1),
    )
    emit_curve(request)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shotbudget",
        description="Measurement-shot planning for quantum program verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_shots = sub.add_parser("shots", help="shot formulas from a fidelity or trace distance")
    p_shots.add_argument("--fidelity", type=float, default=None)
    p_shots.add_argument("--trace-distance", type=float, default=None)
    p_shots.add_argument("--pe", type=float, default=0.05, help="target error probability")
    p_shots.add_argument(
        "--test",
        choices=["all", "pure", "inverse", "swap", "mixed", "pure-mixed"],
        default="all",
    )
    p_shots.add_argument("--regime-factor", type=float, default=1.0)
    p_shots.add_argument("--conservative", action="store_true")
    p_shots.add_argument("--json", action="store_true")
    p_shots.set_defaults(func=cmd_shots)

    p_qcb = sub.add_parser("qcb", help="Chernoff quantity and distances of two state files")
    p_qcb.add_argument("state_a")
    p_qcb.add_argument("state_b")
    p_qcb.add_argument("--pe", type=float, default=None)
    p_qcb.add_argument("--json", action="store_true")
    p_qcb.set_defaults(func=cmd_qcb)

    p_chisq = sub.add_parser("chisq", help="chi-square shot plan")
    p_chisq.add_argument("--bins", type=int, default=16)
    p_chisq.add_argument("--alpha", type=float, default=0.01)
    p_chisq.add_argument("--beta", type=float, default=0.01)
    p_chisq.add_argument("--w2", type=float, default=None)
    p_chisq.add_argument("--fidelity", type=float, default=None)
    p_chisq.add_argument("--case", choices=["attaining", "small"], default="small")
    p_chisq.add_argument("--p", default=None, help="observed distribution file")
    p_chisq.add_argument("--q", default=None, help="reference distribution file")
    p_chisq.add_argument("--json", action="store_true")
    p_chisq.set_defaults(func=cmd_chisq)

    p_noise = sub.add_parser("noise", help="binomial noise-calibrated planning and decision")
    p_noise.add_argument("mode", choices=["plan", "decide"])
    p_noise.add_argument("--q0", type=float, required=True, help="baseline success probability")
    p_noise.add_argument("--q1", type=float, default=None, help="degraded success probability")
    p_noise.add_argument("--alpha", type=float, default=0.01)
    p_noise.add_argument("--beta", type=float, default=0.01)
    p_noise.add_argument("--two-sided", action="store_true")
    p_noise.add_argument("--zeros", type=int, default=None, help="observed all-zeros count")
    p_noise.add_argument("--shots", type=int, default=None)
    p_noise.add_argument("--json", action="store_true")
    p_noise.set_defaults(func=cmd_noise)

    p_budget = sub.add_parser("budget", help="allocate a program error budget from a spec file")
    p_budget.add_argument("--spec", required=True)
    p_budget.add_argument("--out", choices=["table", "json", "csv"], default="table")
    p_budget.add_argument("--strict", action="store_true")
    p_budget.set_defaults(func=cmd_budget)

    p_val = sub.add_parser("validate", help="Monte Carlo check of a formula")
    p_val.add_argument("--scenario", choices=["inverse", "swap", "chisq", "binomial"], required=True)
    p_val.add_argument("--trials", type=int, default=100_000)
    p_val.add_argument("--seed", type=int, default=20_260_822)
    p_val.add_argument("--fidelity", type=float, default=None)
    p_val.add_argument("--shots", type=int, default=None)
    p_val.add_argument("--alpha", type=float, default=0.05)
    p_val.add_argument("--p", default=None)
    p_val.add_argument("--q", default=None)
    p_val.add_argument("--q0", type=float, default=None)
    p_val.add_argument("--q1", type=float, default=None)
    p_val.add_argument("--json", action="store_true")
    p_val.set_defaults(func=cmd_validate)

    p_curve = sub.add_parser("curve", help="CSV sweep of the shot formulas")
    p_curve.add_argument(
        "curve",
        choices=["fid_vs_shots", "test_comparison", "noise_binomial", "trace_vs_shots"],
    )
    p_curve.add_argument("--start", type=float, default=None)
    p_curve.add_argument("--stop", type=float, default=None)
    p_curve.add_argument("--points", type=int, default=200)
    p_curve.add_argument("--pe", type=float, default=None)
    p_curve.add_argument("--alpha", type=float, default=0.01)
    p_curve.add_argument("--beta", type=float, default=0.01)
    p_curve.add_argument("--regime-factor", type=float, default=2.0)
    p_curve.add_argument("--bins", default="2,4,8,16,32,64,128")
    p_curve.add_argument("--q1", default="0.90,0.99")
    p_curve.set_defaults(func=cmd_curve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateStates as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return 3
    except ShotBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main(sys.argv[1:]))
