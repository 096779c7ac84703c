"""Command-line interface.

Subcommands mirror the library pipeline: ``construct`` builds base
matrices, ``du``/``dq`` analyse them, ``label`` searches for a labeling,
``bound`` evaluates the ensemble bounds, ``enumerate`` counts
uncorrectable erasure patterns exhaustively, and ``simulate`` runs the
hybrid decoder over a random channel.

Exit codes: 0 success, 2 budget exceeded with a partial result written,
3 labeling failure, 4 input error.  Every emitted file embeds the
deterministic part of its experiment manifest and gets a
``<out>.manifest.json`` sidecar with timing; reruns with identical
arguments produce byte-identical data files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

from .bounds import bound_report
from .channel import (
    DEFAULT_PATTERN_BUDGET,
    exact_b_nu,
    monte_carlo,
    p_block_conditional,
)
from .constructions import (
    QCSpec,
    RATE34_QC_SPECS,
    complete_bipartite_base,
    complete_graph_base,
    gallager_sample,
    qc_from_generators,
    tanner_girth,
)
from .distance import (
    binary_min_distance,
    min_distance_q,
    ultimate_distance,
)
from .errors import BudgetExceeded, LabelingFailure, NbldpcError
from .galois import Field
from .labeling import LabelSearchConfig, greedy_labeling
from .manifest import ExperimentManifest
from .matrices import (
    ParityCheckMatrix,
    rank_gfq,
    read_bmat,
    read_lab,
    write_bmat,
    write_lab,
)
from .structure import DEFAULT_NODE_BUDGET, QCSymmetry, enumerate_stopping_sets

EXIT_OK = 0
EXIT_BUDGET = 2
EXIT_LABELING = 3
EXIT_INPUT = 4


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit with the input-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _sci(x: float) -> str:
    """Scientific notation with six significant digits and '.' decimal."""
    return f"{x:.5e}"


def _int_arg(text: str) -> int:
    """Integer accepting scientific literals like 1e6."""
    value = float(text)
    if value != int(value):
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(value)


def _modulus_arg(text: str) -> int:
    return int(text, 0)


def _field_from_q(q: int, modulus: int | None) -> Field:
    m = q.bit_length() - 1
    if q < 2 or (1 << m) != q:
        raise NbldpcError(f"alphabet size must be a power of two, got {q}")
    return Field(m, modulus)


def _json_num(x):
    """JSON-safe scalar: infinities become null."""
    if isinstance(x, float) and math.isinf(x):
        return None
    return x


def _emit_json(payload: dict, manifest: ExperimentManifest,
               out: str | None) -> None:
    payload["manifest"] = manifest.deterministic_dict()
    text = json.dumps(payload, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)
        manifest.write_sidecar(out)


def _emit_csv(header: list[str], rows: list[list[str]],
              manifest: ExperimentManifest, out: str) -> None:
    lines = [manifest.comment_line(), ",".join(header)]
    lines += [",".join(row) for row in rows]
    with open(out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    manifest.write_sidecar(out)


def _plot_path(out: str) -> str:
    return os.path.splitext(out)[0] + ".png"


def _manifest(args, command: str, keys: list[str]) -> ExperimentManifest:
    return ExperimentManifest(
        command=command,
        arguments={k: getattr(args, k) for k in keys
                   if getattr(args, k) is not None},
        seed=args.seed,
        budget=args.budget,
        threads=args.threads,
    )


# ---------------------------------------------------------------------------
# construct


def _build_base(args):
    if args.catalog is not None:
        try:
            spec = RATE34_QC_SPECS[args.catalog]
        except KeyError:
            raise NbldpcError(
                f"unknown catalog code {args.catalog!r}; choices are "
                f"{', '.join(sorted(RATE34_QC_SPECS))}") from None
        return qc_from_generators(spec)
    if args.qc is not None:
        return qc_from_generators(QCSpec.parse(args.qc))
    if args.complete_graph is not None:
        return complete_graph_base(args.complete_graph)
    if args.complete_bipartite is not None:
        return complete_bipartite_base(args.complete_bipartite)
    if len(args.gallager) != 3:
        raise NbldpcError(
            f"--gallager expects M,J,K; got {len(args.gallager)} values")
    M, J, K = args.gallager
    return gallager_sample(M, J, K, args.seed)


def cmd_construct(args) -> int:
    manifest = _manifest(args, "construct", [
        "catalog", "qc", "complete_graph", "complete_bipartite",
        "gallager", "out"])
    t0 = time.time()
    B = _build_base(args)
    f2 = Field(1)
    dense = [[B.entry(i, j) for j in range(B.n)] for i in range(B.r)]
    col_w = sorted(set(B.column_weights()))
    row_w = sorted(set(B.row_weights()))
    summary = {
        "r": B.r,
        "n": B.n,
        "J": col_w[0] if len(col_w) == 1 else col_w,
        "K": row_w[0] if len(row_w) == 1 else row_w,
        "rank_gf2": rank_gfq(f2, dense),
        "girth": tanner_girth(B),
    }
    write_bmat(args.out, B)
    manifest.wall_clock_seconds = time.time() - t0
    manifest.write_sidecar(args.out)
    summary["out"] = args.out
    _emit_json(summary, manifest, None)
    return EXIT_OK


# ---------------------------------------------------------------------------
# du / dq


def _analyze(args, want_dq: bool) -> int:
    manifest = _manifest(args, "dq" if want_dq else "du", [
        "code", "lab", "qc_block", "s_max", "out"])
    t0 = time.time()
    B = read_bmat(args.code)
    symmetry = None
    if args.qc_block is not None:
        if B.n % args.qc_block:
            raise NbldpcError(
                f"block size {args.qc_block} does not divide n = {B.n}")
        symmetry = QCSymmetry(args.qc_block, B.n // args.qc_block)
        symmetry.validate(B)
    budget = args.budget if args.budget is not None else DEFAULT_NODE_BUDGET

    report: dict = {"code": args.code, "r": B.r, "n": B.n}
    try:
        dist = ultimate_distance(B, symmetry=symmetry, budget=budget,
                                 s_max=args.s_max)
    except BudgetExceeded as exc:
        report["d_u"] = None
        report["d_u_lower_bound"] = (exc.s_reached or 0) + 1
        report["s_reached"] = exc.s_reached
        report["error"] = str(exc)
        manifest.wall_clock_seconds = time.time() - t0
        _emit_json(report, manifest, args.out)
        return EXIT_BUDGET

    report["d_u"] = _json_num(dist.d_u)
    report["witness"] = (None if dist.witness is None
                         else [j + 1 for j in dist.witness])
    finite = not (isinstance(dist.d_u, float) and math.isinf(dist.d_u))
    if finite:
        coll = enumerate_stopping_sets(B, dist.d_u, symmetry=symmetry,
                                       budget=budget)
        counts = coll.counts()
        report["stopping_sets"] = {
            str(w): counts.get(w, 0) for w in range(2, dist.d_u + 1)}
        report["deficient_stopping_sets"] = {
            str(w): len(coll.deficient_sets(w))
            for w in range(2, dist.d_u + 1)}
        if want_dq:
            lab = read_lab(args.lab, B)
            H = ParityCheckMatrix(B, lab)
            report["field_degree"] = lab.field.m
            report["d_q"] = min_distance_q(H, coll, dist.d_u)
    report["d_b"] = _json_num(binary_min_distance(B))
    report["girth"] = tanner_girth(B)
    manifest.wall_clock_seconds = time.time() - t0
    _emit_json(report, manifest, args.out)
    return EXIT_OK


def cmd_du(args) -> int:
    return _analyze(args, want_dq=False)


def cmd_dq(args) -> int:
    return _analyze(args, want_dq=True)


# ---------------------------------------------------------------------------
# label


def cmd_label(args) -> int:
    manifest = _manifest(args, "label", [
        "code", "q", "target", "restarts", "escalate", "out"])
    t0 = time.time()
    B = read_bmat(args.code)
    f = _field_from_q(args.q, args.field_modulus)
    budget = args.budget if args.budget is not None else DEFAULT_NODE_BUDGET

    if args.target == "du":
        target = ultimate_distance(B, budget=budget).d_u
        if isinstance(target, float) and math.isinf(target):
            raise NbldpcError(
                "the base supports only the zero code; no labeling target")
    else:
        target = int(args.target)

    coll = enumerate_stopping_sets(B, max(target - 1, 1), budget=budget)
    cfg = LabelSearchConfig(target_distance=target,
                            master_seed=args.seed,
                            max_restarts=args.restarts,
                            escalate_alphabet=args.escalate)
    stats: dict = {}
    lab = greedy_labeling(B, f, coll, cfg, stats=stats)

    verify_coll = enumerate_stopping_sets(B, target, budget=budget)
    H = ParityCheckMatrix(B, lab)
    d_q = min_distance_q(H, verify_coll, target)

    write_lab(args.out, B, lab)
    manifest.wall_clock_seconds = time.time() - t0
    manifest.write_sidecar(args.out)
    _emit_json({
        "code": args.code,
        "out": args.out,
        "target_distance": target,
        "d_q": d_q,
        "field_degree": lab.field.m,
        "search": stats,
    }, manifest, None)
    return EXIT_OK


# ---------------------------------------------------------------------------
# bound


def _params_arg(text: str) -> tuple[int, int, int, int, int]:
    parts = [int(p) for p in text.split(",")]
    if len(parts) != 5:
        raise argparse.ArgumentTypeError(
            f"expected n,M,J,K,q with five entries, got {text!r}")
    return tuple(parts)


def cmd_bound(args) -> int:
    manifest = _manifest(args, "bound", ["params", "nu_max", "out"])
    t0 = time.time()
    n, M, J, K, q = args.params
    report = bound_report(n, M, J, K, q, args.nu_max)
    rows = [[str(nu), _sci(lv), _sci(sp), _sci(nb)]
            for nu, lv, sp, nb in zip(report.nu_values, report.liva,
                                      report.spectral, report.new_bound)]
    manifest.wall_clock_seconds = time.time() - t0
    _emit_csv(["nu", "liva", "spectral", "new_bound"], rows, manifest,
              args.out)
    if args.plot:
        from .report import render_bound_curves
        render_bound_curves(report, _plot_path(args.out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# enumerate


def cmd_enumerate(args) -> int:
    manifest = _manifest(args, "enumerate", ["code", "lab", "nu_max", "out"])
    t0 = time.time()
    B = read_bmat(args.code)
    lab = read_lab(args.lab, B)
    H = ParityCheckMatrix(B, lab)
    budget = (args.budget if args.budget is not None
              else DEFAULT_PATTERN_BUDGET)

    code = EXIT_OK
    try:
        res = exact_b_nu(H, args.nu_max, budget=budget)
    except BudgetExceeded as exc:
        res = exc.partial
        code = EXIT_BUDGET
        if res is None:
            raise

    rows = [[str(nu), str(res.b(nu)), _sci(p_block_conditional(res, nu))]
            for nu in range(1, args.nu_max + 1) if res.covers(nu)]
    manifest.wall_clock_seconds = time.time() - t0
    _emit_csv(["nu", "b_nu", "p_block_cond"], rows, manifest, args.out)
    if args.plot:
        from .report import render_enumeration
        render_enumeration(res, _plot_path(args.out))
    return code


# ---------------------------------------------------------------------------
# simulate


def cmd_simulate(args) -> int:
    manifest = _manifest(args, "simulate", [
        "code", "lab", "delta", "nu", "trials", "out"])
    if args.plot and args.out is None:
        raise NbldpcError("--plot needs --out to name the figure file")
    t0 = time.time()
    B = read_bmat(args.code)
    lab = read_lab(args.lab, B)
    H = ParityCheckMatrix(B, lab)
    result = monte_carlo(H, trials=args.trials, seed=args.seed,
                         delta=args.delta, nu=args.nu)
    payload = {
        "code": args.code,
        "lab": args.lab,
        "mode": result.mode,
        "delta": result.delta,
        "nu": result.nu,
        "trials": result.trials,
        "failures": result.failures,
        "failure_rate": result.failure_rate,
        "wilson_interval": list(result.interval),
        "mean_ops": result.mean_ops,
        "seed": result.seed,
    }
    manifest.wall_clock_seconds = time.time() - t0
    _emit_json(payload, manifest, args.out)
    if args.plot:
        from .report import render_simulation
        render_simulation({"hybrid": result}, _plot_path(args.out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="master seed for randomised steps")
    common.add_argument("--threads", type=int, default=1,
                        help="worker count (recorded; execution is "
                             "single threaded)")
    common.add_argument("--budget", type=_int_arg, default=None,
                        help="search/pattern budget override")
    common.add_argument("--field-modulus", type=_modulus_arg, default=None,
                        help="override the default modulus polynomial "
                             "(bit mask, e.g. 0x25)")

    parser = _Parser(prog="nbldpc", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="cmd", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("construct", parents=[common],
                       help="build a base matrix and write it as .bmat")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--catalog", choices=sorted(RATE34_QC_SPECS))
    grp.add_argument("--qc", metavar="SPEC",
                     help="circulant description 'r=9;(1,2),(1,3)'")
    grp.add_argument("--complete-graph", type=int, metavar="R")
    grp.add_argument("--complete-bipartite", type=int, metavar="R")
    grp.add_argument("--gallager", type=lambda s: tuple(
        int(p) for p in s.split(",")), metavar="M,J,K")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    for name, func, need_lab in (("du", cmd_du, False),
                                 ("dq", cmd_dq, True)):
        p = sub.add_parser(
            name, parents=[common],
            help=("ultimate distance and base metadata" if name == "du"
                  else "du report plus the labeled code's distance"))
        p.add_argument("--code", required=True)
        p.add_argument("--lab", required=need_lab)
        p.add_argument("--qc-block", type=int, default=None,
                       help="circulant block size enabling symmetry "
                            "reduction")
        p.add_argument("--s-max", type=int, default=None,
                       help="stop the deepening search at this set size")
        p.add_argument("--out", default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("label", parents=[common],
                       help="greedy labeling achieving a distance target")
    p.add_argument("--code", required=True)
    p.add_argument("--q", type=int, required=True,
                   help="alphabet size (power of two)")
    p.add_argument("--target", default="du",
                   help="'du' or an explicit distance")
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--escalate", action="store_true",
                   help="move to larger alphabets when restarts run out")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("bound", parents=[common],
                       help="ensemble bounds on uncorrectable patterns")
    p.add_argument("--params", type=_params_arg, required=True,
                   metavar="n,M,J,K,q")
    p.add_argument("--nu-max", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--plot", action="store_true",
                   help="render the curves to <out>.png")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("enumerate", parents=[common],
                       help="exhaustive uncorrectable-pattern counts")
    p.add_argument("--code", required=True)
    p.add_argument("--lab", required=True)
    p.add_argument("--nu-max", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("simulate", parents=[common],
                       help="Monte Carlo erasure decoding of a labeled code")
    p.add_argument("--code", required=True)
    p.add_argument("--lab", required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--delta", type=float, default=None,
                     help="i.i.d. symbol erasure probability")
    grp.add_argument("--nu", type=int, default=None,
                     help="fixed number of erasures per trial")
    p.add_argument("--trials", type=_int_arg, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse handles usage errors (and --help) by exiting; surface
        # the code instead so main stays callable in process.
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except LabelingFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LABELING
    except (NbldpcError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
