"""Named example algebras used by the command line and the tests."""

from __future__ import annotations

import json
import re
from pathlib import Path

from .superalgebra import SuperAlgebra, matrix_superalgebra

PRESET_HELP = {
    "trivial": "the integers, one even basis vector",
    "dual": "dual numbers Z[eps]/(eps^2) with eps even",
    "exterior": "Z[eps]/(eps^2) with eps odd",
    "mat<k>": "k x k integer matrices, e.g. mat2",
    "pq-a<l>": "odd path algebra of the linear quiver 1->2->...->l",
    "pq-a<l>-rev": "the same with arrows reversed",
    "zz-a<l>": "zigzag superalgebra of the linear graph with l vertices",
}


def trivial() -> SuperAlgebra:
    return SuperAlgebra(("1",), (0,), {(0, 0): {0: 1}}, {0: 1}, title="Z")


def dual_numbers(odd: bool = False) -> SuperAlgebra:
    p = 1 if odd else 0
    alg = SuperAlgebra(("1", "eps"), (0, p), {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
                       {0: 1}, title="Z[eps]" + (" odd" if odd else ""))
    alg.check()
    return alg


def preset(name: str) -> SuperAlgebra:
    from .quiver import Quiver, path_superalgebra, zigzag_algebra

    key = name.strip().lower()
    if key in ("trivial", "z", "o"):
        return trivial()
    if key == "dual":
        return dual_numbers()
    if key == "exterior":
        return dual_numbers(odd=True)
    if m := re.fullmatch(r"mat(\d+)", key):
        alg = matrix_superalgebra(trivial(), int(m.group(1)))
        alg.check()
        return alg
    if m := re.fullmatch(r"(pq|zz)-a(\d+)(-rev)?", key):
        q = Quiver.type_a(int(m.group(2)), reverse=bool(m.group(3)))
        return path_superalgebra(q) if m.group(1) == "pq" else zigzag_algebra(q)
    raise ValueError(f"unknown preset {name!r}; known: {', '.join(PRESET_HELP)}")


def load_presentation(path: str | Path) -> SuperAlgebra:
    return SuperAlgebra.from_json(json.loads(Path(path).read_text()))
