"""Command-line entry point: ``satloc <command> [options]``.

Exit status: 0 on success, 1 when a check fails (bound exceeded, manipulation
found, table mismatch), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .bounds import gadget_thm10, gadget_thm7, lp_lower_bound, nearest_grid_epsilon, REPRODUCTION_FACTOR
from .core import evaluate
from .io import InstanceParseError, load_instance
from .mechanisms import MECHANISMS, UnknownMechanism, get_mechanism, run_mechanism
from .opt import normalize_objective, solve
from .ratios import (
    CSV_HEADER,
    UNBOUNDED,
    BoundViolation,
    GeneratorConfig,
    adversarial_search,
    default_jobs,
    format_instance,
    on_label_config,
    ratio,
    ratio_sweep,
)
from .tables import paper_tables
from .truthfulness import check_gsp, check_sp

DEFAULT_SEED = 42


class UsageError(Exception):
    pass


def fmt(value, human: bool) -> str:
    if value is UNBOUNDED:
        return "unbounded"
    value = Fraction(value)
    if human and value.denominator != 1:
        return f"{value} (~{float(value):.6f})"
    return str(value)


def _outcome_doc(outcome) -> dict:
    return {"support": [[str(p), str(q)] for p, q in outcome.support()], "off_label": outcome.off_label}


def _emit(args, text_lines, doc, rows=None):
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for r in rows or [[k, v] for k, v in doc.items()]:
            writer.writerow(r)
        sys.stdout.write(buf.getvalue())
    else:
        print("\n".join(text_lines))


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")


def cmd_solve(args) -> int:
    _need(args, "instance", "objective")
    inst = load_instance(args.instance)
    res = solve(inst, args.objective)
    h = args.format == "text"
    _emit(
        args,
        [f"objective: {res.objective}", f"location:  {fmt(res.location, h)}", f"value:     {fmt(res.value, h)}",
         f"candidates examined: {res.candidates_examined}"],
        {"objective": res.objective, "location": str(res.location), "value": str(res.value),
         "candidates_examined": res.candidates_examined},
    )
    return 0


def cmd_run(args) -> int:
    _need(args, "instance", "mechanism")
    inst = load_instance(args.instance)
    outcome = run_mechanism(args.mechanism, inst)
    prof = evaluate(outcome, inst)
    h = args.format == "text"
    lines = [f"mechanism: {get_mechanism(args.mechanism).id}", f"outcome:   {outcome}"]
    if outcome.off_label:
        lines.append("warning:   off-label run; no ratio guarantee applies")
    lines += [f"SS:        {fmt(prof.ss, h)}", f"MS:        {fmt(prof.ms, h)}"]
    lines += [f"agent {i + 1}:   {fmt(v, h)}" for i, v in enumerate(prof.values)]
    if any(inst.is_degenerate(i) for i in range(inst.n)):
        lines.append("note:      instance has an indifferent agent (satisfaction fixed at 1)")
    _emit(args, lines, {"mechanism": args.mechanism, "outcome": _outcome_doc(outcome), "ss": str(prof.ss),
                        "ms": str(prof.ms), "satisfactions": [str(v) for v in prof.values]})
    return 0


def _sp_output(args, rep) -> int:
    lines = [f"verdict: {rep.verdict}" + (" (inconclusive: budget exhausted)" if rep.inconclusive else ""),
             f"candidates tried: {rep.candidates_tried}"]
    doc = {"verdict": rep.verdict, "inconclusive": rep.inconclusive, "candidates_tried": rep.candidates_tried}
    if rep.witness is not None:
        w = rep.witness
        lines.append(f"coalition: {[i + 1 for i in w.coalition]}")
        lines += [f"  agent {i + 1} reports {r}" for i, r in zip(w.coalition, w.reports)]
        lines.append(f"  outcome {w.outcome}")
        lines += [f"  agent {i + 1}: {b} -> {a}" for i, b, a in zip(w.coalition, w.before, w.after)]
        doc["witness"] = {
            "coalition": list(w.coalition),
            "reports": [[str(x) for x in r.locations] for r in w.reports],
            "outcome": _outcome_doc(w.outcome),
            "before": [str(v) for v in w.before],
            "after": [str(v) for v in w.after],
        }
    _emit(args, lines, doc)
    return 0 if rep.holds and not rep.inconclusive else 1


def cmd_check_sp(args) -> int:
    _need(args, "instance", "mechanism")
    return _sp_output(args, check_sp(args.mechanism, load_instance(args.instance), args.grid))


def cmd_check_gsp(args) -> int:
    _need(args, "instance", "mechanism")
    inst = load_instance(args.instance)
    return _sp_output(args, check_gsp(args.mechanism, inst, args.coalition_size, args.grid, args.budget))


def cmd_ratio(args) -> int:
    _need(args, "mechanism", "objective")
    if args.instance:
        inst = load_instance(args.instance)
        r = ratio(args.mechanism, inst, args.objective)
        _emit(args, [f"ratio: {fmt(r, args.format == 'text')}"], {"ratio": str(r)})
        return 0
    cfg = on_label_config(args.mechanism, args.variant, seed=args.seed, grid=args.coord_grid)
    try:
        rep = ratio_sweep(args.mechanism, args.objective, cfg, samples=args.samples, jobs=args.jobs)
    except BoundViolation as exc:
        print(f"BOUND EXCEEDED: {exc}", file=sys.stderr)
        return 1
    lines = [f"{rep.mechanism_id}/{rep.objective}: worst ratio {fmt(rep.worst_ratio, True)} over {rep.samples} "
             f"samples (+ tight cases), bound {rep.checked_bound}", f"worst instance: {format_instance(rep.worst_instance)}"]
    _emit(args, lines, dict(zip(CSV_HEADER, rep.csv_row())), rows=[CSV_HEADER, rep.csv_row()])
    return 0


def cmd_search(args) -> int:
    _need(args, "mechanism", "objective")
    cfg = on_label_config(args.mechanism, args.variant, seed=args.seed, grid=args.coord_grid)
    rep = adversarial_search(args.mechanism, args.objective, cfg, restarts=args.samples, iterations=args.iterations)
    lines = [f"{rep.mechanism_id}/{rep.objective}: best ratio found {fmt(rep.worst_ratio, True)}",
             f"instance: {format_instance(rep.worst_instance)}"]
    _emit(args, lines, dict(zip(CSV_HEADER, rep.csv_row())), rows=[CSV_HEADER, rep.csv_row()])
    return 0


def cmd_bounds(args) -> int:
    _need(args, "theorem")
    grid = args.grid
    if args.theorem == 7:
        gadget = gadget_thm7()
    else:
        gadget = gadget_thm10(nearest_grid_epsilon(grid))
    cert = lp_lower_bound(gadget, grid, exact=args.exact)
    doc = {"gadget": cert.gadget, "grid": grid, "t_star": str(cert.t_star), "bound": str(cert.bound),
           "published_bound": cert.published_bound, "margin": cert.margin, "iterations": cert.iterations}
    _emit(args, [cert.report()], doc)
    return 0 if float(cert.bound) >= REPRODUCTION_FACTOR * cert.published_bound else 1


def cmd_paper_tables(args) -> int:
    text, ok = paper_tables(samples=args.samples, seed=args.seed, jobs=args.jobs)
    print(text)
    return 0 if ok else 1


COMMANDS = {
    "solve": cmd_solve,
    "run": cmd_run,
    "check-sp": cmd_check_sp,
    "check-gsp": cmd_check_gsp,
    "ratio": cmd_ratio,
    "search": cmd_search,
    "bounds": cmd_bounds,
    "paper-tables": cmd_paper_tables,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", metavar="PATH")
    common.add_argument("--mechanism", metavar="ID", help=f"one of {', '.join(MECHANISMS)} (or MEAN)")
    common.add_argument("--objective", type=normalize_objective, metavar="ss|ms")
    common.add_argument("--variant", choices=["sum", "max"], help="variant for random instances")
    common.add_argument("--samples", type=int, default=500)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--grid", type=int, default=20, help="misreport grid (check-*) or LP support grid (bounds)")
    common.add_argument("--coord-grid", type=int, default=60, help="coordinate grid for random instances")
    common.add_argument("--coalition-size", type=int, default=2)
    common.add_argument("--budget", type=int, default=100_000)
    common.add_argument("--iterations", type=int, default=200)
    common.add_argument("--theorem", type=int, choices=[7, 10])
    common.add_argument("--exact", action="store_true", help="rational pivoting in bounds")
    common.add_argument(
        "--format", choices=["text", "csv", "json"], help="default: csv for sweeps and searches, text otherwise"
    )
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default $SATLOC_JOBS or 1)")
    parser = argparse.ArgumentParser(prog="satloc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs is None:
        args.jobs = default_jobs()
    if args.format is None:
        sweep = args.command == "search" or (args.command == "ratio" and args.instance is None)
        args.format = "csv" if sweep else "text"
    if args.command == "bounds" and args.grid == 20 and "--grid" not in (argv or sys.argv):
        args.grid = 120 if args.theorem == 7 else 256
    try:
        return COMMANDS[args.command](args)
    except (UsageError, InstanceParseError, UnknownMechanism, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownMechanism) else str(exc)
        print(f"satloc {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
