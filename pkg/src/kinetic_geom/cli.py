"""Command line entry point: ``kinetic-geom <command> SCENARIO [options]``.

Commands print a JSON report (to ``--output`` or stdout).  Exit statuses:
0 event found / check passed, 1 no event / check failed, 2 input error,
3 numerical failure.  Errors go to stderr as a single ``error[...]:`` line.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path
from typing import Optional

from .errors import (ApproximationInfeasibleError, ConfigurationError, ContractError,
                     DegreeOverflowError, NumericalFailureError, PreconditionError,
                     UnsupportedMetricError)
from .events import EventKind, EventReport
from .motion import Metric, Scenario
from .oracle import DEFAULT_SAMPLES, GridSpec, check_report, compare_time
from .poly import DEFAULT_TOL
from .scenario_file import ScenarioFileError, load_scenario
from .solvers import pair_distance_fn, solve

EXIT_EVENT, EXIT_NO_EVENT, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3
TRACE_SAMPLES = 1024


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_INPUT, f"error[usage]: {self.prog}: {message}\n")


def _num(x: Optional[float]):
    if x is None:
        return None
    return float(f"{x:.12g}")


def _dump(doc: dict, output: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _ids(scn: Scenario, member):
    if isinstance(member, tuple):
        return [scn.objects[k].id for k in member]
    return scn.objects[member].id


def report_document(scn: Scenario, report: EventReport, parameters: dict) -> dict:
    """Serializable form of an :class:`EventReport` with object ids."""
    witness = None
    if report.witness is not None:
        w = report.witness
        witness = {"defect": w.defect, "triple": [scn.objects[k].id for k in w.triple],
                   "middle": scn.objects[w.middle].id}
    return {
        "kind": report.kind.value,
        "min_time": _num(report.min_time),
        "participants": [_ids(scn, m) for m in report.participants],
        "witness": witness,
        "parameters": parameters,
    }


def _focus(scn: Scenario, focus_id: Optional[str]) -> int:
    if focus_id is None:
        return 0
    try:
        return scn.index_of(focus_id)
    except KeyError as exc:
        raise InputError(f"--focus: {exc.args[0]}") from None


def _scenario_path(args) -> str:
    path = args.scenario_opt or args.scenario
    if not path:
        raise InputError("a scenario file is required (positional or --scenario)")
    return path


def _solver_kwargs(kind: EventKind, args, scn: Scenario) -> tuple[dict, dict]:
    kwargs = {"tol": args.tolerance, "threads": args.threads}
    params = {"focus": None, "metric": scn.metric.value, "tolerance": args.tolerance,
              "horizon": [_num(scn.horizon.lo), _num(scn.horizon.hi)]}
    if kind is EventKind.THREE_ALIGNED:
        eps = scn.epsilon if args.epsilon is None else args.epsilon
        kwargs.update(epsilon=eps, middle_only=args.middle_only)
        params.update(epsilon=_num(eps), middle_only=args.middle_only)
    return kwargs, params


def _run_query(kind: EventKind, args) -> int:
    doc = load_scenario(_scenario_path(args))
    scn = doc.scenario
    focus = _focus(scn, args.focus)
    kwargs, params = _solver_kwargs(kind, args, scn)
    params["focus"] = scn.objects[focus].id
    start = time.perf_counter()
    report = solve(kind, scn, focus, **kwargs)
    out = report_document(scn, report, params)
    if args.timing:
        out["wall_time_ms"] = round((time.perf_counter() - start) * 1e3, 3)
    _dump(out, args.output)
    return EXIT_EVENT if report.found else EXIT_NO_EVENT


def cmd_pieces(args) -> int:
    doc = load_scenario(_scenario_path(args))
    scn = doc.scenario
    try:
        a_id, b_id = args.pair.split(",")
        a, b = scn.index_of(a_id.strip()), scn.index_of(b_id.strip())
    except ValueError:
        raise InputError(f"--pair: expected 'A,B', got {args.pair!r}") from None
    except KeyError as exc:
        raise InputError(f"--pair: {exc.args[0]}") from None
    f = pair_distance_fn(scn, a, b, args.tolerance)
    quantity = "manhattan_distance" if scn.metric is Metric.MANHATTAN else "squared_euclidean_distance"
    trace = args.trace or f"trace_{scn.objects[a].id}_{scn.objects[b].id}.csv"
    grid = GridSpec(scn.horizon, TRACE_SAMPLES)
    with open(trace, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", quantity])
        for t in grid.times():
            w.writerow([f"{float(t):.12g}", f"{f(float(t)):.12g}"])
    out = {
        "pair": [scn.objects[a].id, scn.objects[b].id],
        "quantity": quantity,
        "num_pieces": f.num_pieces,
        "switchpoints": [_num(x) for x in f.switchpoints],
        "pieces": [{"interval": [_num(pc.interval.lo), _num(pc.interval.hi)],
                    "coefficients": [_num(c) for c in pc.func.coeffs] or [0.0]}
                   for pc in f.pieces],
        "trace": str(trace),
    }
    _dump(out, args.output)
    return EXIT_EVENT


def cmd_oracle_check(args) -> int:
    doc = load_scenario(_scenario_path(args))
    scn = doc.scenario
    kind = EventKind(args.kind)
    focus = _focus(scn, args.focus)
    kwargs, params = _solver_kwargs(kind, args, scn)
    params.update(focus=scn.objects[focus].id, samples=args.samples)
    report = solve(kind, scn, focus, **kwargs)
    grid = GridSpec(scn.horizon, args.samples)
    eps = kwargs.get("epsilon")
    middle_only = kwargs.get("middle_only", False)
    cmp = check_report(scn, report, grid, eps, middle_only, args.tolerance)
    checks = [{"subject": "solver", "verdict": cmp.verdict, "detail": cmp.detail}]
    if kind in doc.expected:
        exp = compare_time(doc.expected[kind], cmp.oracle, grid, cmp.approach, args.tolerance)
        checks.append({"subject": "expected", "value": _num(doc.expected[kind]),
                       "verdict": exp.verdict, "detail": exp.detail})
    passed = all(c["verdict"] != "FAIL" for c in checks)
    ev = cmp.oracle
    out = {
        "kind": kind.value,
        "parameters": params,
        "analytic": {"min_time": _num(report.min_time),
                     "participants": [_ids(scn, m) for m in report.participants]},
        "oracle": {"bracket": None if ev is None else [_num(ev.lo), _num(ev.hi)],
                   "participants": [] if ev is None else [_ids(scn, m) for m in ev.participants],
                   "graze": _num(cmp.approach.graze) if cmp.approach.graze != float("inf") else None,
                   "depth": _num(cmp.approach.depth)},
        "checks": checks,
        "verdict": "PASS" if passed else "FAIL",
    }
    _dump(out, args.output)
    return EXIT_EVENT if passed else EXIT_NO_EVENT


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="kinetic-geom",
        description="First-event queries for point objects moving along polynomial trajectories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("scenario", nargs="?", help="scenario JSON file")
        p.add_argument("--scenario", dest="scenario_opt", metavar="PATH",
                       help="scenario JSON file (alternative to the positional argument)")
        p.add_argument("--focus", metavar="ID", help="focus object id (default: first object)")
        p.add_argument("--tolerance", type=float, default=DEFAULT_TOL, metavar="T",
                       help="root tolerance in time units (default %(default)g)")
        p.add_argument("--threads", type=int, default=1, metavar="K",
                       help="worker threads for the per-object loop (output is unchanged)")
        p.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")

    def aligned(p):
        p.add_argument("--epsilon", type=float, metavar="E", help="collinearity tolerance")
        p.add_argument("--middle-only", action="store_true",
                       help="only report triples with the focus in the middle")

    for name, kind in (("too-close", EventKind.TOO_CLOSE), ("too-far", EventKind.TOO_FAR),
                       ("three-aligned", EventKind.THREE_ALIGNED)):
        p = sub.add_parser(name, help=f"earliest {name} event for the focus object")
        common(p)
        if kind is EventKind.THREE_ALIGNED:
            aligned(p)
        p.add_argument("--timing", action="store_true",
                       help="add wall_time_ms to the report (makes output run-dependent)")
        p.set_defaults(func=lambda a, k=kind: _run_query(k, a))

    p = sub.add_parser("pieces", help="piece description and CSV trace of a pair distance")
    common(p)
    p.add_argument("--pair", required=True, metavar="A,B", help="two object ids")
    p.add_argument("--trace", metavar="PATH", help="CSV trace path (default trace_A_B.csv)")
    p.set_defaults(func=cmd_pieces)

    p = sub.add_parser("oracle-check", help="compare a solver against the sampling oracle")
    common(p)
    aligned(p)
    p.add_argument("--kind", required=True, choices=[k.value for k in EventKind])
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, metavar="N")
    p.set_defaults(func=cmd_oracle_check)
    return parser


def _fail(tag: str, exc: BaseException, status: int) -> int:
    message = " ".join(str(exc).split())
    print(f"error[{tag}]: {message}", file=sys.stderr)
    return status


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        return _fail("input", "--threads must be >= 1", EXIT_INPUT)
    if getattr(args, "samples", 2) < 2:
        return _fail("input", "--samples must be >= 2", EXIT_INPUT)
    if getattr(args, "tolerance", 1.0) <= 0:
        return _fail("input", "--tolerance must be > 0", EXIT_INPUT)
    try:
        return args.func(args)
    except (ScenarioFileError, InputError, ConfigurationError, ContractError,
            UnsupportedMetricError, DegreeOverflowError, ApproximationInfeasibleError,
            PreconditionError) as exc:
        return _fail("input", exc, EXIT_INPUT)
    except NumericalFailureError as exc:
        return _fail("numerical", exc, EXIT_NUMERICAL)


if __name__ == "__main__":
    raise SystemExit(main())
