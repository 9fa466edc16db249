"""Command line front end.

Every command writes sorted JSON (or JSON lines for tables) to ``--out`` or
stdout.  Failed checks and bad arguments exit nonzero with a JSON
diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Iterable

from . import tables
from .double import DIVIDED, PLAIN, TurnerDouble
from .presets import PRESET_HELP, load_presentation, preset
from .schur import FORMULA, ORACLE, VERIFIED, ConstantsMismatch, SchurAlgebra, SchurDouble
from .superalgebra import SuperAlgebra, matrix_superalgebra, parse_ring, to_ring
from .verify import SUITES, run

EXIT_VIOLATION = 1
EXIT_USAGE = 2


class JobError(Exception):
    def __init__(self, kind: str, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.kind, self.code = kind, code


# ---------------------------------------------------------------- job setup

def _algebra(args) -> SuperAlgebra:
    given = [x for x in (args.preset, args.presentation, args.quiver) if x]
    if len(given) > 1:
        raise JobError("usage", "give at most one of --preset, --presentation, --quiver")
    if args.presentation:
        return load_presentation(args.presentation)
    if args.quiver:
        from .quiver import Quiver, path_superalgebra, zigzag_algebra
        q = Quiver.load(args.quiver)
        return zigzag_algebra(q) if args.quiver_algebra == "zz" else path_superalgebra(q)
    return preset(args.preset or "trivial")


def _check_job(args) -> None:
    if args.n < 1:
        raise JobError("precondition", "n must be at least 1")
    if args.d < 0 or args.d > args.max_d:
        raise JobError("precondition", f"d must lie in [0, {args.max_d}] (see --max-d)")
    parse_ring(args.ring)


def _coerce(value: int, ring: str):
    v = to_ring(value, ring)
    return str(v) if not isinstance(v, int) else v


def _table_json(rows: dict, ring: str) -> list:
    out = []
    for (i, j), row in sorted(rows.items()):
        vals = {k: _coerce(c, ring) for k, c in sorted(row.items())}
        vals = {k: c for k, c in vals.items() if c != 0}
        if vals:
            out.append([i, j, [[k, c] for k, c in vals.items()]])
    return out


def _emit(args, payload) -> None:
    text = json.dumps(payload, sort_keys=True) + "\n"
    _write(args, [text])


def _write(args, chunks: Iterable[str]) -> None:
    if args.out:
        tables.write_table(Path(args.out), (c.rstrip("\n") for c in chunks))
    else:
        for c in chunks:
            sys.stdout.write(c)


# ---------------------------------------------------------------- commands

def cmd_basis(args) -> int:
    alg = _algebra(args)
    if args.double:
        dbl = SchurDouble(alg, args.n, args.d)
        labels = [{"index": i, "C": list(c), "D": list(f), "name": dbl.double.describe(i),
                   "turner_degree": dbl.turner_degree(i) if alg.odd_square_zero() else None}
                  for i, (c, f) in enumerate(dbl.labels)]
        kind = "double"
    else:
        s = SchurAlgebra(alg, args.n, args.d)
        labels = [{"index": i, "C": list(c), "name": s.describe(i), "parity": s.parity_of(i)}
                  for i, c in enumerate(s.exponents)]
        kind = "schur"
    _emit(args, {"algebra": alg.title, "kind": kind, "n": args.n, "d": args.d,
                 "basis_order": list(matrix_superalgebra(alg, args.n).names),
                 "count": len(labels), "labels": labels})
    return 0


def cmd_constants(args) -> int:
    s = SchurAlgebra(_algebra(args), args.n, args.d)
    try:
        table = tables.structure_constants(s, args.mode, use_cache=not args.no_cache, seed=args.seed)
    except ConstantsMismatch as exc:
        raise JobError("theorem-violation", str(exc), EXIT_VIOLATION) from exc
    if args.divided:
        try:
            left, right = s.divided_constants(table)
        except ArithmeticError as exc:
            raise JobError("integrality", str(exc), EXIT_VIOLATION) from exc
        _emit(args, {"algebra": s.alg.title, "n": s.n, "d": s.d, "ring": args.ring,
                     "divided_left": _table_json(left, args.ring),
                     "divided_right": _table_json(right, args.ring)})
        return 0
    if parse_ring(args.ring) is not None:
        p = parse_ring(args.ring)
        table = {k: {e: f % p for e, f in row.items() if f % p} for k, row in table.items()}
    _write(args, (line + "\n" for line in tables.dump_lines(s, table, args.mode)))
    return 0


def cmd_double(args) -> int:
    alg = _algebra(args)
    variant = DIVIDED if args.divided else PLAIN
    head = {"algebra": alg.title, "n": args.n, "d": args.d, "variant": variant, "ring": args.ring}
    if args.what == "table":
        sd = SchurDouble(alg, args.n, args.d)
        rows = {(i, j): sd.product(i, j, variant) for i in range(sd.dim) for j in range(sd.dim)}
        _emit(args, {**head, "dim": sd.dim, "labels": [sd.double.describe(i) for i in range(sd.dim)],
                     "products": _table_json(rows, args.ring)})
    elif args.what == "gram":
        dbl = TurnerDouble(matrix_superalgebra(alg, args.n), args.d)
        from .linalg import determinant
        gram = dbl.gram_functional(variant)
        det = determinant(gram)
        _emit(args, {**head, "gram": [[_coerce(v, args.ring) for v in row] for row in gram],
                     "determinant": _coerce(det, args.ring)})
    else:
        dbl = TurnerDouble(matrix_superalgebra(alg, args.n), args.d)
        _emit(args, {**head, "phi": [list(t) for t in dbl.phi_matrix()],
                     "target_dim": dbl.inv_t.dim})
    return 0


def cmd_verify(args) -> int:
    if args.preset or args.presentation or args.quiver:
        instances = [(_algebra(args), args.n, args.d)]
    else:
        instances = None
    try:
        outcomes = run(args.suite, instances, args.seed)
    except KeyError as exc:
        raise JobError("usage", exc.args[0]) from exc
    payload = {"status": "PASS" if all(o.passed for o in outcomes) else "FAIL",
               "seed": args.seed, "suites": [o.to_json(timing=False) for o in outcomes]}
    for o in outcomes:
        print(f"{'PASS' if o.passed else 'FAIL'} {o.suite} ({o.seconds:.2f} s)", file=sys.stderr)
    _emit(args, payload)
    if payload["status"] != "PASS":
        failed = [o.suite for o in outcomes if not o.passed]
        raise JobError("theorem-violation", f"failed suites: {', '.join(failed)}", EXIT_VIOLATION)
    print("PASS", file=sys.stderr)
    return 0


def cmd_bench(args) -> int:
    alg = _algebra(args)
    out = {"algebra": alg.title, "n": args.n, "d": args.d}
    for mode in (FORMULA, ORACLE):
        s = SchurAlgebra(alg, args.n, args.d)
        t0 = time.perf_counter()
        table = s.structure_constants(mode)
        out[f"{mode}_seconds"] = round(time.perf_counter() - t0, 4)
        out["pairs"] = len(table)
    t0 = time.perf_counter()
    sd = SchurDouble(alg, args.n, args.d)
    for i in range(sd.dim):
        for j in range(sd.dim):
            sd.product(i, j)
    out["double_seconds"] = round(time.perf_counter() - t0, 4)
    out["double_dim"] = sd.dim
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_cache(args) -> int:
    if args.action == "clear":
        _emit(args, {"removed": tables.clear_cache()})
        return 0
    entries = tables.list_cache()
    _emit(args, {"directory": str(tables.cache_dir()), "tables": entries})
    if args.action == "verify":
        stale = [e["file"] for e in entries if not e.get("current")]
        if stale:
            raise JobError("stale-cache", f"stale or unreadable tables: {', '.join(stale)}",
                           EXIT_VIOLATION)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("algebra")
    src.add_argument("--preset", help="one of: " + "; ".join(f"{k} ({v})" for k, v in PRESET_HELP.items()))
    src.add_argument("--presentation", help="JSON presentation file")
    src.add_argument("--quiver", help="quiver JSON file {vertices, edges}")
    src.add_argument("--quiver-algebra", choices=("pq", "zz"), default="pq",
                     help="algebra built from --quiver (default: path superalgebra)")
    common.add_argument("-n", type=int, default=1)
    common.add_argument("-d", type=int, default=1)
    common.add_argument("--ring", default="Z", help="Z, Q or F_p")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--max-d", type=int, default=5)

    parser = argparse.ArgumentParser(prog="turner", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common], help="list basis labels")
    p.add_argument("--double", action="store_true", help="labels of the double instead")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("constants", parents=[common], help="structure constants as JSON lines")
    p.add_argument("--mode", choices=(FORMULA, ORACLE, VERIFIED), default=VERIFIED)
    p.add_argument("--divided", action="store_true", help="divided-power constants")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("double", parents=[common], help="double products, Gram matrix or phi")
    p.add_argument("what", choices=("table", "gram", "phi"), nargs="?", default="table")
    p.add_argument("--divided", action="store_true")
    p.set_defaults(func=cmd_double)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=("all", *SUITES))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="time table builds")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("cache", parents=[common], help="manage cached tables")
    p.add_argument("action", choices=("list", "clear", "verify"))
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command not in ("cache",):
            _check_job(args)
        return args.func(args)
    except JobError as exc:
        print(json.dumps({"error": exc.kind, "message": str(exc)}, sort_keys=True), file=sys.stderr)
        return exc.code
    except (ValueError, OSError) as exc:
        print(json.dumps({"error": "precondition", "message": str(exc)}, sort_keys=True),
              file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
