"""Command-line entry point.

Exit codes: 0 success, 1 usage or computation error, 2 gap inequality
violated (which would indicate a bug here, not a counterexample).

Sweep CSV columns, in order: trial, irrep, dimension, degree, generators,
classical_lambda2, quantum_lambda2, margin, inequality_holds, error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

import numpy as np

from . import __version__
from .channel import GAP_TOL, SCHEMA_VERSION, verify_gap_inequality
from .fourier import (
    QFT_CAP,
    irrep_completeness_check,
    qft_matrix,
    unitarity_residual,
    verify_left_translation_blocks,
)
from .groups import DEFAULT_CAP, GeneratorSet, GroupError, GroupTooLarge
from .irreps import list_irreps, parse_irrep
from .instance import Instance, load_instance
from .spectral import MAX_ITER, SEEDS
from .standard import PermutationOracle, standard_gap_report

log = logging.getLogger("qexpander")

CSV_COLUMNS = [
    "trial",
    "irrep",
    "dimension",
    "degree",
    "generators",
    "classical_lambda2",
    "quantum_lambda2",
    "margin",
    "inequality_holds",
    "error",
]


class UsageError(Exception):
    pass


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _resolve_irrep(inst: Instance, text: str | None):
    if text is not None:
        return parse_irrep(inst.group, text)
    if inst.irrep is not None:
        return inst.irrep
    nontrivial = [h for h in list_irreps(inst.group) if not h.is_trivial]
    if len(nontrivial) == 1:
        return nontrivial[0]
    raise UsageError(
        f"{inst.group} has {len(nontrivial)} non-trivial irreps; pass --irrep or set 'irrep'"
    )


def _require_gens(inst: Instance) -> GeneratorSet:
    if inst.generators is None:
        raise UsageError("instance has no generators")
    return inst.generators


def cmd_gap(args, out) -> int:
    inst = load_instance(args.instance)
    gens = _require_gens(inst)
    h = _resolve_irrep(inst, args.irrep)
    tol = args.tol if args.tol is not None else (inst.tol if inst.tol is not None else GAP_TOL)
    seed = args.seed if args.seed is not None else (inst.seed or 0)
    report = verify_gap_inequality(
        inst.group,
        gens,
        h,
        method=args.method,
        tol=tol,
        seed=seed,
        max_iter=args.max_iter,
        seeds=args.seeds,
    )
    _dump(report.to_dict(), out)
    return 0 if report.inequality_holds else 2


def _sweep_rows(inst: Instance, args):
    if args.irrep in (None, "all"):
        irreps = [h for h in list_irreps(inst.group) if not h.is_trivial]
    else:
        irreps = [parse_irrep(inst.group, args.irrep)]
    seed = args.seed if args.seed is not None else (inst.seed or 0)
    rng = np.random.default_rng(seed)
    size = args.size
    if size is None and inst.generators is None:
        raise UsageError("instance has no generators; pass --size for random generator sets")
    tol = args.tol if args.tol is not None else GAP_TOL
    for trial in range(args.trials):
        gens = inst.generators if size is None else GeneratorSet.random(inst.group, size, rng)
        for h in irreps:
            row = {
                "trial": trial,
                "irrep": h.label_text,
                "dimension": h.dim,
                "degree": len(gens),
                "generators": " ".join(gens.labels()),
            }
            try:
                rep = verify_gap_inequality(
                    inst.group, gens, h, method=args.method, tol=tol, seed=seed
                )
                row.update(
                    classical_lambda2=repr(rep.classical_lambda2),
                    quantum_lambda2=repr(rep.quantum_lambda2),
                    margin=repr(rep.classical_lambda2 - rep.quantum_lambda2),
                    inequality_holds=rep.inequality_holds,
                    error="",
                )
            except (ValueError, ArithmeticError) as exc:
                row.update(error=str(exc))
            yield row


def cmd_sweep(args, out) -> int:
    inst = load_instance(args.instance)
    rows = list(_sweep_rows(inst, args))
    if args.format == "json":
        _dump({"schema": SCHEMA_VERSION, "columns": CSV_COLUMNS, "rows": rows}, out)
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, restval="", lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
    bad = [r for r in rows if r.get("inequality_holds") is False]
    return 2 if bad else 0


def cmd_qft_check(args, out) -> int:
    inst = load_instance(args.instance)
    qft = qft_matrix(inst.group, args.cap)
    worst, worst_x = 0.0, None
    for x in qft.elements:
        r = verify_left_translation_blocks(inst.group, x, qft=qft)
        if worst_x is None or r > worst:
            worst, worst_x = r, x
    _dump(
        {
            "schema": SCHEMA_VERSION,
            "group": inst.group.to_json(),
            "order": inst.group.order,
            "max_residual": worst,
            "argmax_element": str(worst_x),
            "unitarity_residual": unitarity_residual(qft.matrix),
            "completeness": irrep_completeness_check(inst.group, args.cap, qft.irreps),
            "irreps": [{"label": h.label_text, "dimension": h.dim} for h in qft.irreps],
        },
        out,
    )
    return 0


def cmd_irreps(args, out) -> int:
    inst = load_instance(args.instance)
    irreps = list_irreps(inst.group)
    _dump(
        {
            "schema": SCHEMA_VERSION,
            "group": inst.group.to_json(),
            "order": inst.group.order,
            "irreps": [
                {"label": h.label_text, "dimension": h.dim, "trivial": h.is_trivial}
                for h in irreps
            ],
            "sum_of_squared_dimensions": sum(h.dim**2 for h in irreps),
            "completeness": sum(h.dim**2 for h in irreps) == inst.group.order,
        },
        out,
    )
    return 0


def cmd_standard_gap(args, out) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    oracle = PermutationOracle.random(args.n, args.degree, args.seed)
    report = standard_gap_report(
        oracle,
        tol=args.tol,
        max_iter=args.max_iter,
        seeds=args.seeds,
        seed=args.seed,
        cap=args.cap,
    )
    _dump(report.to_dict(), out)
    return 2 if report.inequality_holds is False else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qexpander", description="Quantum expanders from Cayley graph walks."
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def iteration_flags(p, tol_default):
        p.add_argument("--tol", type=float, default=tol_default)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--max-iter", type=int, default=MAX_ITER)
        p.add_argument("--seeds", type=int, default=SEEDS, help="power-iteration restarts")

    p = sub.add_parser("gap", help="certify the gap inequality for one instance")
    p.add_argument("instance")
    p.add_argument("--irrep")
    p.add_argument("--method", choices=["auto", "dense", "iter", "iterative"], default="auto")
    iteration_flags(p, None)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("sweep", help="batch over irreps and random generator sets")
    p.add_argument("instance")
    p.add_argument("--irrep", default="all")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--size", type=int, default=None, help="draw random generator sets of this size")
    p.add_argument("--method", choices=["auto", "dense", "iter", "iterative"], default="auto")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("qft-check", help="check the Fourier block structure")
    p.add_argument("instance")
    p.add_argument("--cap", type=int, default=QFT_CAP)
    p.set_defaults(func=cmd_qft_check)

    p = sub.add_parser("irreps", help="list irreps and the completeness check")
    p.add_argument("instance")
    p.set_defaults(func=cmd_irreps)

    p = sub.add_parser("standard-gap", help="any-dimension expander from the (N,1) irrep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    iteration_flags(p, 1e-6)
    p.set_defaults(func=cmd_standard_gap)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if getattr(args, "seed", 0) is None and args.command == "standard-gap":
        args.seed = 0
    try:
        return args.func(args, out)
    except (UsageError, GroupError, GroupTooLarge, ValueError, ArithmeticError, OSError) as exc:
        print(f"qexpander: error: {exc}", file=sys.stderr)
        return 1


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
