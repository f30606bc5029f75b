"""Command-line entry point: ``bbc <command> ...``.

Exit status: 0 success, 1 invalid colouring, 2 precondition rejected,
3 time budget exhausted, 4 I/O, format or usage error.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from .algorithms import (
    AlgorithmReport,
    ConstructionError,
    PreconditionError,
    best_colouring,
    colour_forest_partition,
    colour_interval_bipartite,
    colour_sparse_peel,
    double_spaced_colouring,
    mad_parameter,
)
from .algorithms.sparse import MadViolation
from .chordal import CliquePathRejected, clique_number, clique_path_restricted, is_chordal
from .exact import exact_bbc, exact_cbc, exact_mad
from .generators import BACKBONES, KINDS, GeneratorSpec
from .graph import (
    BackboneInstance,
    Colouring,
    connected_components,
    is_bipartite,
    is_c4_free,
    verify_backbone_colouring,
    verify_circular_colouring,
)
from .io import FormatError, parse_instance, read_colouring, serialize_colouring, serialize_instance

EXIT_OK, EXIT_INVALID, EXIT_PRECONDITION, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3, 4
ALGORITHMS = ("interval2", "sparse", "c4free", "double", "best", "exact")
SURVEY_ALGORITHMS = ("double", "interval2", "sparse", "c4free", "best")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_IO)


def thread_cap() -> int:
    raw = os.environ.get("BBC_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise UsageError(f"BBC_THREADS must be an integer (got {raw!r})") from None
    return os.cpu_count() or 1


def _rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("d must be positive")
    return value


def _load(path: str, q: int | None = None) -> BackboneInstance:
    inst = parse_instance(Path(path).read_bytes())
    if q is not None:
        inst = BackboneInstance(inst.host, inst.backbone_edges, q, inst.comments)
    return inst


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_csv(path: str | None, header, rows) -> None:
    if path is None:
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows(rows)
        return
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _yes(flag) -> str:
    return "yes" if flag else "no"


# --- commands ------------------------------------------------------------


def cmd_recognize(args) -> int:
    inst = _load(args.instance)
    g = inst.host
    chordal = is_chordal(g)
    restricted = False
    reason = "host not chordal"
    if chordal:
        reason = ""
        try:
            for comp in connected_components(g):
                clique_path_restricted(g.induced(comp)[0])
            restricted = True
        except CliquePathRejected as exc:
            reason = exc.condition
    print(f"n={g.n} m={g.m} backbone_edges={len(inst.backbone_edges)} q={inst.q}")
    print(f"chordal={_yes(chordal)}")
    print(f"omega={clique_number(g) if chordal else 'unknown'}")
    print(f"interval-restricted={_yes(restricted)}" + (f" ({reason})" if reason else ""))
    bip = is_bipartite(inst.backbone)
    print(f"H-bipartite={_yes(bip)}")
    c4 = is_c4_free(inst.backbone)
    print(f"H-C4-free={_yes(c4)}" + ("" if c4 else f" (witness {' '.join(map(str, c4.witness))})"))
    return EXIT_OK


def _run_algorithm(inst: BackboneInstance, alg: str, d: Fraction | None,
                   budget: float | None) -> tuple[Colouring, list[AlgorithmReport], int]:
    if alg == "best":
        col, reports = best_colouring(inst)
        return col, reports, EXIT_OK
    if alg == "exact":
        result = exact_bbc(inst, budget)
        omega = clique_number(inst.host) if is_chordal(inst.host) else 0
        report = AlgorithmReport("exact", inst.n, omega, span=result.upper_bound,
                                 bound=result.upper_bound, certified=result.exact,
                                 millis=result.seconds * 1000.0,
                                 verification=verify_backbone_colouring(inst, result.witness),
                                 note="" if result.exact else f"lower bound {result.lower_bound}")
        return result.witness, [report], EXIT_OK if result.exact else EXIT_BUDGET
    if alg == "interval2":
        col, report = colour_interval_bipartite(inst)
    elif alg == "sparse":
        col, report = colour_sparse_peel(inst, d if d is not None else (mad_parameter(inst) or 1))
    elif alg == "c4free":
        col, report = colour_forest_partition(inst)
    else:
        col, report = double_spaced_colouring(inst)
    return col, [report], EXIT_OK


def cmd_colour(args) -> int:
    inst = _load(args.instance, args.q)
    try:
        col, reports, status = _run_algorithm(inst, args.alg, args.d, args.budget)
    except MadViolation as exc:
        print(f"precondition failed: {exc.condition}; witness {sorted(exc.witness)}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PreconditionError as exc:
        print(f"precondition failed: {exc.condition}", file=sys.stderr)
        return EXIT_PRECONDITION
    check = verify_backbone_colouring(inst, col)
    _emit(serialize_colouring(col), args.out)
    instance_id = Path(args.instance).stem
    rows = [r.csv_row(instance_id) for r in reports]
    if args.csv:
        _write_csv(args.csv, AlgorithmReport.CSV_HEADER, rows)
    for r in reports:
        line = f"{r.algorithm}: span={r.span} bound={r.bound} certified={_yes(r.certified)}"
        print(line + (f" ({r.note})" if r.note else ""), file=sys.stderr)
    if not check.valid:
        return EXIT_INVALID
    return status


def cmd_exact(args) -> int:
    inst = _load(args.instance, args.q)
    solve = exact_cbc if args.circular else exact_bbc
    result = solve(inst, args.budget)
    _emit(result.serialize(), args.out)
    return EXIT_OK if result.exact else EXIT_BUDGET


def cmd_verify(args) -> int:
    inst = _load(args.instance, args.q)
    col, tag, k = read_colouring(Path(args.colouring).read_bytes())
    try:
        if args.circular or tag == "cbc":
            report = verify_circular_colouring(inst, col, k)
        else:
            report = verify_backbone_colouring(inst, col)
    except ValueError as exc:
        print(f"invalid: {exc}")
        return EXIT_INVALID
    if report.valid:
        print(f"valid {tag} colouring, k={report.span}")
        return EXIT_OK
    print(f"invalid: {len(report.violations)} violation(s)")
    for v in report.violations:
        print(f"  {v.kind} on edge {v.edge[0]}-{v.edge[1]}")
    return EXIT_INVALID


def cmd_mad(args) -> int:
    inst = _load(args.instance)
    result = exact_mad(inst.host if args.host else inst.backbone)
    print(f"mad {result.value}")
    print("witness " + " ".join(map(str, sorted(result.witness))))
    return EXIT_OK


def instance_seed(seed: int, index: int) -> int:
    """Deterministic 64-bit seed of the ``index``-th instance of a batch."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def _specs(args) -> list[GeneratorSpec]:
    return [
        GeneratorSpec(args.kind, n=args.n, omega=args.omega, l=args.l, r=args.r,
                      seed=instance_seed(args.seed, i), backbone=args.backbone)
        for i in range(args.count)
    ]


def _map(fn, items, workers: int):
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def _generate_one(job):
    name, spec = job
    return name, serialize_instance(spec.build())


def cmd_generate(args) -> int:
    specs = _specs(args)
    width = len(str(max(len(specs) - 1, 0)))
    jobs = [(f"{args.kind}-{i:0{width}d}", s) for i, s in enumerate(specs)]
    results = sorted(_map(_generate_one, jobs, thread_cap()))
    if args.out is None:
        for _, text in results:
            sys.stdout.write(text)
        return EXIT_OK
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in results:
        (out / f"{name}.bbc").write_text(text)
    print(f"wrote {len(results)} instance(s) to {out}", file=sys.stderr)
    return EXIT_OK


SURVEY_HEADER = ("instance", "n", "omega", *SURVEY_ALGORITHMS,
                 "exact", "lower", "upper", "status", "ratio")


def survey_row(job) -> list[str]:
    """One survey row: spans of each algorithm, exact BBC_2 or its bounds,
    and the ratio BBC_2/omega (from the lower bound when inexact)."""
    name, inst, budget = job
    _, reports = best_colouring(inst)
    spans = {r.algorithm: r.span for r in reports if r.span is not None}
    best = min(spans.values())
    omega = reports[0].omega
    result = exact_bbc(inst, budget)
    value = result.optimum if result.exact else result.lower_bound
    ratio = Fraction(value, omega) if omega else Fraction(0)
    cells = [name, str(inst.n), str(omega)]
    cells += ["" if spans.get(a) is None else str(spans[a]) for a in SURVEY_ALGORITHMS[:-1]]
    cells += [str(best), "" if not result.exact else str(result.optimum),
              str(result.lower_bound), str(result.upper_bound),
              "exact" if result.exact else "inexact", str(ratio)]
    return cells


def cmd_survey(args) -> int:
    specs = _specs(args) if args.count else []
    width = len(str(max(len(specs) - 1, 0)))
    jobs = [(f"{args.kind}-{i:0{width}d}", s.build(), args.budget) for i, s in enumerate(specs)]
    for r in args.lower_bound or ():
        spec = GeneratorSpec("lower-bound", r=r)
        jobs.append((f"lower-bound-r{r}", spec.build(), args.budget))
    rows = sorted(_map(survey_row, jobs, thread_cap()))
    exact_ratios = [Fraction(row[-1]) for row in rows if row[-2] == "exact"]
    summary = ["summary", "", "", *[""] * len(SURVEY_ALGORITHMS), "", "", "",
               f"{len(exact_ratios)}/{len(rows)} exact",
               str(max(exact_ratios)) if exact_ratios else ""]
    _write_csv(args.csv, SURVEY_HEADER, rows + [summary])
    return EXIT_OK


# --- argument parsing ----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bbc", description="Backbone colouring of chordal graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("recognize", help="report structural properties of an instance")
    p.add_argument("instance")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("colour", aliases=["color"], help="colour an instance")
    p.add_argument("instance")
    p.add_argument("--alg", choices=ALGORITHMS, default="best")
    p.add_argument("--d", type=_rational, help="Mad bound for the sparse algorithm")
    p.add_argument("--q", type=int, help="override the instance gap")
    p.add_argument("--budget", type=float, help="seconds, for --alg exact")
    p.add_argument("--out", help="colouring file (default stdout)")
    p.add_argument("--csv", help="report CSV path")
    p.set_defaults(func=cmd_colour)

    p = sub.add_parser("exact", help="solve BBC_q or CBC_q exactly")
    p.add_argument("instance")
    p.add_argument("--circular", action="store_true")
    p.add_argument("--q", type=int)
    p.add_argument("--budget", type=float, help="seconds")
    p.add_argument("--out")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="check a colouring file against an instance")
    p.add_argument("instance")
    p.add_argument("colouring")
    p.add_argument("--circular", action="store_true")
    p.add_argument("--q", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mad", help="exact maximum average degree of the backbone")
    p.add_argument("instance")
    p.add_argument("--host", action="store_true", help="use the host graph instead")
    p.set_defaults(func=cmd_mad)

    for name, func, helptext in (("generate", cmd_generate, "write seeded instances"),
                                 ("survey", cmd_survey, "ratio statistics over a batch")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--kind", choices=KINDS, default="chordal")
        p.add_argument("--n", type=int, default=30)
        p.add_argument("--omega", type=int, default=4)
        p.add_argument("--l", type=int, default=10)
        p.add_argument("--r", type=int, default=1)
        p.add_argument("--backbone", choices=BACKBONES, default="forest")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--count", type=int, default=10)
        if name == "generate":
            p.add_argument("--out", help="directory (default: concatenated to stdout)")
        else:
            p.add_argument("--budget", type=float, default=2.0, help="exact-solver seconds per instance")
            p.add_argument("--lower-bound", type=int, action="append", metavar="R",
                           help="also include the lower-bound family member r=R")
            p.add_argument("--csv", help="output CSV (default stdout)")
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, FormatError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PreconditionError as exc:
        print(f"precondition failed: {exc.condition}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        # bad parameters reaching the library (generator sizes, colour ranges)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConstructionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
