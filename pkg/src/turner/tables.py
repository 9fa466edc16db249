"""Persisted structure-constant tables.

A table file is JSON lines: one header object, then one record per pair
``(C, D)`` with a nonzero product::

    {"C": [...], "D": [...], "E": [[[...], f], ...]}

where ``C``, ``D`` and ``E`` are exponent vectors over the basis of
``M_n(A)``.  Files live in ``$TURNER_CACHE_DIR`` (default
``~/.cache/turner``) under a name derived from the header contents, so a
changed presentation or basis order never collides with an old file.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Iterator, Mapping

from .schur import BASIS_ORDER_VERSION, FORMULA, ORACLE, VERIFIED, SchurAlgebra

KIND = "structure-constants"
SUFFIX = ".jsonl"


class StaleTable(ValueError):
    """The header of a table file does not match the requested algebra."""


def cache_dir() -> Path:
    return Path(os.environ.get("TURNER_CACHE_DIR") or Path.home() / ".cache" / "turner")


def header(schur: SchurAlgebra, mode: str) -> dict:
    if mode not in (FORMULA, ORACLE, VERIFIED):
        raise ValueError(f"unknown mode {mode!r}")
    return {
        "kind": KIND,
        "presentation": schur.alg.content_hash(),
        "title": schur.alg.title,
        "n": schur.n,
        "d": schur.d,
        "basis_order_version": BASIS_ORDER_VERSION,
        "basis_order": list(schur.x.names),
        "mode": mode,
    }


def table_key(head: Mapping) -> str:
    fields = {k: head[k] for k in ("kind", "presentation", "n", "d", "basis_order_version",
                                   "basis_order", "mode")}
    blob = json.dumps(fields, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:32]


def table_path(schur: SchurAlgebra, mode: str, directory: Path | None = None) -> Path:
    return (directory or cache_dir()) / (table_key(header(schur, mode)) + SUFFIX)


def dump_lines(schur: SchurAlgebra, table: Mapping[tuple[int, int], Mapping[int, int]],
               mode: str) -> Iterator[str]:
    """The file contents line by line, in basis order."""
    ex = schur.exponents
    yield json.dumps(header(schur, mode), sort_keys=True)
    for (c, e) in sorted(table):
        row = table[(c, e)]
        if not row:
            continue
        out = [[list(ex[k]), row[k]] for k in sorted(row)]
        yield json.dumps({"C": list(ex[c]), "D": list(ex[e]), "E": out}, sort_keys=True)


def write_table(path: Path, lines: Iterator[str]) -> None:
    """Write atomically: a temporary file in the same directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=SUFFIX)
    try:
        with os.fdopen(fd, "w") as fh:
            for line in lines:
                fh.write(line + "\n")
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def read_header(path: Path) -> dict:
    with open(path) as fh:
        first = fh.readline()
    try:
        head = json.loads(first)
    except json.JSONDecodeError as exc:
        raise StaleTable(f"{path}: unreadable header") from exc
    if not isinstance(head, dict) or head.get("kind") != KIND:
        raise StaleTable(f"{path}: not a structure-constant table")
    return head


def read_table(path: Path, schur: SchurAlgebra, mode: str) -> dict[tuple[int, int], dict]:
    want = header(schur, mode)
    head = read_header(path)
    for key in ("presentation", "n", "d", "basis_order_version", "basis_order", "mode"):
        if head.get(key) != want[key]:
            raise StaleTable(f"{path}: header field {key!r} is {head.get(key)!r}, "
                             f"expected {want[key]!r}")
    index = {tuple(c): i for i, c in enumerate(schur.exponents)}
    table: dict = {}
    with open(path) as fh:
        next(fh)
        for lineno, line in enumerate(fh, start=2):
            rec = json.loads(line)
            try:
                key = (index[tuple(rec["C"])], index[tuple(rec["D"])])
                table[key] = {index[tuple(e)]: int(f) for e, f in rec["E"]}
            except (KeyError, TypeError, ValueError) as exc:
                raise StaleTable(f"{path}:{lineno}: malformed record") from exc
    return table


def structure_constants(schur: SchurAlgebra, mode: str = VERIFIED, use_cache: bool = True,
                        directory: Path | None = None, seed: int = 0) -> dict[tuple[int, int], dict]:
    """Structure constants, from the cache when a matching file exists.

    A stale or damaged file is rebuilt and overwritten.
    """
    path = table_path(schur, mode, directory)
    if use_cache and path.exists():
        try:
            return read_table(path, schur, mode)
        except (StaleTable, json.JSONDecodeError):
            pass
    table = schur.structure_constants(mode, seed)
    if use_cache:
        write_table(path, dump_lines(schur, table, mode))
    return table


def list_cache(directory: Path | None = None) -> list[dict]:
    out = []
    for path in sorted((directory or cache_dir()).glob("*" + SUFFIX)):
        try:
            head = read_header(path)
        except (StaleTable, OSError) as exc:
            out.append({"file": path.name, "error": str(exc)})
            continue
        out.append({"file": path.name, "title": head.get("title"), "n": head.get("n"),
                    "d": head.get("d"), "mode": head.get("mode"),
                    "current": head.get("basis_order_version") == BASIS_ORDER_VERSION
                    and path.name == table_key(head) + SUFFIX})
    return out


def clear_cache(directory: Path | None = None) -> int:
    count = 0
    for path in (directory or cache_dir()).glob("*" + SUFFIX):
        path.unlink()
        count += 1
    return count
