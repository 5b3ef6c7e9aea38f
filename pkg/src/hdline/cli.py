"""Command-line front end.

Every subcommand prints JSON by default (``--table`` for a plain listing).
Exact values are printed as ``"p/q"`` strings; ``--approx`` adds float
renderings next to them.  Exit status: 0 on success, 1 on a domain error,
2 on a usage error.
"""

import argparse
import contextlib
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import line_model, punctured, scheduler, verify
from .errors import CapacityLimitError, HDLineError, InvalidValueError
from .ext import fmt
from .line_model import LineNetwork, Schedule
from .routing import graph as rgraph
from .routing import reduction
from .routing.cnf import Cnf, parse_dimacs


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except FileNotFoundError:
        raise HDLineError(f"file not found: {path}") from None
    except OSError as exc:
        raise HDLineError(f"cannot read {path}: {exc}") from None


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise HDLineError(f"{path}: invalid JSON ({exc})") from None


def _approx(x) -> Optional[float]:
    return None if x is None else float(x)


def _exhaustive_bound(args) -> Optional[int]:
    return None if args.force else args.max_exhaustive


def _real_links(args) -> List[float]:
    text = args.links
    if text is None and args.links_file:
        data = _load_json(args.links_file)
        items = data["links"] if isinstance(data, dict) else data
        return [float(v) for v in items]
    if text is None:
        raise UsageError("one of --links or --links-file is required")
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InvalidValueError(f"--real expects decimal capacities, got {text!r}") from None


def _network(args) -> LineNetwork:
    if args.links is not None and args.links_file:
        raise UsageError("--links and --links-file are mutually exclusive")
    if getattr(args, "real", False):
        net, _ = scheduler.rationalize_real(_real_links(args), args.denominator)
        return net
    if args.links is not None:
        return line_model.parse_links(args.links)
    if args.links_file:
        return LineNetwork.from_json(_load_json(args.links_file))
    raise UsageError("one of --links or --links-file is required")


def cmd_capacity(args) -> Dict:
    net = _network(args)
    cap = line_model.closed_form_capacity(net)
    out = {"capacity": fmt(cap)}
    if args.real:
        out["epsilon"] = fmt(Fraction(1, args.denominator))
    if args.fold:
        out["fold"] = [fmt(m) for m in line_model.distributed_capacity_fold(net)]
        out["fd_capacity"] = fmt(line_model.fd_capacity(net))
    if args.approx:
        out["capacity_approx"] = _approx(cap)
    return out


def cmd_schedule(args) -> Dict:
    net = _network(args)
    trace = scheduler.trace_schedule(net)
    out = trace.grouped.to_json()
    out["rate"] = fmt(trace.rate)
    out["M"] = trace.multiplicities.M
    out["n"] = list(trace.multiplicities.n)
    out["delta"] = trace.colors.delta
    out["intervals"] = [list(iv) for iv in trace.colors.intervals]
    out["p_u"] = list(trace.grouped.boundaries)
    if args.approx:
        out["rate_approx"] = _approx(trace.rate)
    return out


def cmd_verify(args) -> Dict:
    if args.real:
        report = verify.epsilon_sandwich_check(_real_links(args), args.denominator)
        return report.to_json()
    net = _network(args)
    if args.schedule:
        sched = Schedule.from_json(_load_json(args.schedule))
    else:
        sched = scheduler.build_simple_schedule(net)
    cert = verify.certify_schedule_optimal(sched, net)
    out = cert.to_json()
    if args.exhaustive:
        value, cut = verify.min_cut_exhaustive(sched, net, _exhaustive_bound(args))
        out["min_cut"] = fmt(value)
        out["min_cut_set"] = sorted(cut)
    if args.approx:
        out["rate_approx"] = float(cert.rate)
    return out


def cmd_punctured(args) -> Dict:
    span = _exhaustive_bound(args)
    if args.count is not None:
        return {"T": punctured.count_primitive_recurrence(args.count)}
    if args.range is not None:
        a, b = args.range
        sets = punctured.enumerate_primitive(a, b, span)
        return {"a": a, "b": b, "count": len(sets), "sets": [list(h.elems) for h in sets]}
    if args.witness is not None:
        n = args.relays
        if n is None:
            raise UsageError("--witness needs --relays")
        cut = [int(t) for t in args.witness.split(",") if t.strip()]
        rep = punctured.witness_check(cut, n, span)
        net = punctured.witness_network_for_cut(cut, n)
        return {
            "cut": sorted(rep.cut),
            "network": net.to_json()["links"],
            "state": rep.state,
            "fd_capacity": fmt(rep.fd_capacity),
            "state_rate": fmt(rep.state_rate),
            "optimal_states": list(rep.optimal_states),
            "unique_among_candidates": rep.unique_among_candidates,
            "unique_among_all": rep.unique_among_all,
        }
    raise UsageError("punctured needs one of --count, --range or --witness")


def cmd_lower_bound(args) -> Dict:
    return punctured.lower_bound_certificate(args.relays, _exhaustive_bound(args)).to_json()


def cmd_route(args) -> Dict:
    g = rgraph.CapGraph.from_json(_load_json(args.graph))
    bound = None if args.force else args.max_vertices
    if args.z is not None:
        path = rgraph.find_hd_path(g, args.z, bound)
        return {"z": args.z, "decision": path is not None, "path": path}
    found = rgraph.best_hd_path(g, bound)
    if found is None:
        return {"capacity": None, "path": None}
    value, path = found
    out = {"capacity": fmt(value), "path": path}
    if args.approx:
        out["capacity_approx"] = _approx(value)
    return out


def _cnf(args) -> Cnf:
    if not args.dimacs:
        raise UsageError("--dimacs FILE is required")
    return parse_dimacs(_read(args.dimacs))


def cmd_reduce(args) -> Dict:
    art = reduction.reduce_3sat(_cnf(args), args.z)
    return art.to_json()


def cmd_check_reduction(args) -> Dict:
    limits = (None, None) if args.force else (8, 6)
    rep = reduction.verify_reduction(_cnf(args), args.z, *limits, check_rules=not args.no_rules)
    return rep.to_json()


def _is_scalar(v) -> bool:
    return not isinstance(v, (dict, list)) or (
        isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v))


def _cell(v) -> str:
    if isinstance(v, list):
        return " ".join(_cell(x) for x in v) if v else "-"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _table(obj, indent: str = "") -> List[str]:
    """Flatten a JSON-shaped result into aligned ``key  value`` lines."""
    lines = []
    if isinstance(obj, dict):
        if "s" in obj and "w" in obj:
            colors = f"  colors {obj['colors'][0]}..{obj['colors'][1]}" if "colors" in obj else ""
            return [f"{indent}{obj['s']}  {obj['w']}{colors}"]
        width = max((len(k) for k in obj), default=0)
        for k, v in obj.items():
            if _is_scalar(v):
                lines.append(f"{indent}{k.ljust(width)}  {_cell(v)}")
            else:
                lines.append(f"{indent}{k}:")
                lines.extend(_table(v, indent + "  "))
    else:
        for item in obj:
            lines.extend(_table(item, indent) if not _is_scalar(item) or isinstance(item, dict)
                         else [indent + _cell(item)])
    return lines


def _add_links(p: argparse.ArgumentParser, real: bool = True) -> None:
    p.add_argument("--links", help="comma-separated capacities, e.g. 2,2,3,1 or 1/2,inf")
    p.add_argument("--links-file", help='JSON file {"links": [...]}')
    if real:
        p.add_argument("--real", action="store_true",
                       help="treat capacities as reals and round down to multiples of 1/D")
        p.add_argument("--denominator", type=int, default=scheduler.DEFAULT_DENOMINATOR,
                       metavar="D")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hdline", description="Half-duplex line network capacity, scheduling and routing")
    common = argparse.ArgumentParser(add_help=False)
    fmt_group = common.add_mutually_exclusive_group()
    fmt_group.add_argument("--json", dest="table", action="store_false", help="JSON output (default)")
    fmt_group.add_argument("--table", dest="table", action="store_true", help="plain table output")
    common.set_defaults(table=False)
    common.add_argument("--approx", action="store_true", help="also print float approximations")
    common.add_argument("--max-exhaustive", type=int, default=verify.DEFAULT_MAX_EXHAUSTIVE,
                        metavar="N", help="size bound for exponential enumerations")
    common.add_argument("--force", action="store_true", help="ignore exhaustive size bounds")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("capacity", parents=[common], help="closed-form approximate capacity")
    _add_links(p)
    p.add_argument("--fold", action="store_true", help="also print the per-relay running minima")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("schedule", parents=[common], help="optimal simple schedule")
    _add_links(p)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("verify", parents=[common],
                       help="certify a schedule, or run the rounding check with --real")
    _add_links(p)
    p.add_argument("--schedule", help="schedule JSON file (default: build one)")
    p.add_argument("--exhaustive", action="store_true", help="also minimize over all 2^N cuts")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("punctured", parents=[common], help="primitive punctured subsets")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--count", type=int, metavar="n", help="T(n) by the recurrence")
    g.add_argument("--range", type=int, nargs=2, metavar=("A", "B"), help="list P(A, B)")
    g.add_argument("--witness", metavar="CUT", help="witness check for a cut, e.g. 2 or 1,3")
    p.add_argument("--relays", type=int, metavar="N")
    p.set_defaults(func=cmd_punctured)

    p = sub.add_parser("lower-bound", parents=[common], help="count candidate optimal states")
    p.add_argument("--relays", type=int, required=True, metavar="N")
    p.set_defaults(func=cmd_lower_bound)

    p = sub.add_parser("route", parents=[common], help="best half-duplex S-D path in a graph")
    p.add_argument("--graph", required=True, help="graph JSON file")
    p.add_argument("--z", type=Fraction, help="decide whether a path of capacity >= Z exists")
    p.add_argument("--max-vertices", type=int, default=rgraph.DEFAULT_MAX_VERTICES)
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("reduce-3sat", parents=[common], help="build the 3SAT reduction graphs")
    p.add_argument("--dimacs", required=True)
    p.add_argument("--z", type=Fraction, default=Fraction(1))
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("check-reduction", parents=[common],
                       help="compare truth-table SAT with HD path search")
    p.add_argument("--dimacs", required=True)
    p.add_argument("--z", type=Fraction, default=Fraction(1))
    p.add_argument("--no-rules", action="store_true", help="skip enumerating accepted paths")
    p.set_defaults(func=cmd_check_reduction)
    return parser


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_jsonable(v) for v in obj]
    return obj


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = _jsonable(args.func(args))
    except UsageError as exc:
        parser.print_usage(err)
        print(f"hdline: error: {exc}", file=err)
        return 2
    except CapacityLimitError as exc:
        print(f"hdline: {exc} (use --force or raise --max-exhaustive)", file=err)
        return 1
    except HDLineError as exc:
        print(f"hdline: {exc}", file=err)
        return 1
    if args.table:
        out.write("\n".join(_table(result)) + "\n")
    else:
        out.write(json.dumps(result) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
