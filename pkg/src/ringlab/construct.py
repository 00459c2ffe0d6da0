"""Ring constructors: Z_n, direct products and matrix rings over a base ring.

A constructor spec is a small JSON-like value::

    {"zn": 6}
    {"product": [spec, spec]}
    {"matrix": {"base": spec, "k": 2}}            # full k x k matrices
    {"upper_triangular": {"base": spec, "k": 2}}
    {"strictly_upper": {"base": spec, "k": 3}}
    {"row_ring": spec}                            # [[a, b], [0, 0]]

or the equivalent shorthand string (``z6``, ``prod:(z2,z3)``, ``mat2:z2``,
``ut2:z2``, ``sut3:z2``, ``row_ring:z2``).

Matrix elements are encoded mixed-radix over their free entries in
row-major order, first entry most significant: for ``[[a, b], [0, c]]``
over ``Z_2`` the index is ``4a + 2b + c``. A product element ``(a, b)`` is
``a * |B| + b``.
"""

from __future__ import annotations

import itertools
import re
from typing import Any

from .errors import OrderLimitExceeded, UnsupportedSpec
from .ring import FiniteRing

DEFAULT_MAX_ORDER = 4096

Spec = dict[str, Any]


def parse_shorthand(text: str) -> Spec:
    """Parse ``prod:(ut2:z2,z3)``-style shorthand into a constructor spec."""
    spec, rest = _parse(text.strip().replace(" ", ""))
    if rest:
        raise UnsupportedSpec(f"trailing input {rest!r} in {text!r}")
    return spec


_MATRIX_WORDS = {"mat": "matrix", "ut": "upper_triangular", "sut": "strictly_upper"}


def _parse(s: str) -> tuple[Spec, str]:
    m = re.match(r"(?:zn:|z)(\d+)", s)
    if m:
        return {"zn": int(m.group(1))}, s[m.end():]
    if s.startswith("row_ring:") or s.startswith("row:"):
        base, rest = _parse(s.split(":", 1)[1])
        return {"row_ring": base}, rest
    m = re.match(r"(mat|sut|ut)(\d+):", s)
    if m:
        base, rest = _parse(s[m.end():])
        return {_MATRIX_WORDS[m.group(1)]: {"base": base, "k": int(m.group(2))}}, rest
    if s.startswith("prod:("):
        left, rest = _parse(s[len("prod:("):])
        if not rest.startswith(","):
            raise UnsupportedSpec(f"expected ',' in product at {rest!r}")
        right, rest = _parse(rest[1:])
        if not rest.startswith(")"):
            raise UnsupportedSpec(f"expected ')' closing product at {rest!r}")
        return {"product": [left, right]}, rest[1:]
    raise UnsupportedSpec(f"cannot parse ring spec {s!r}")


def normalize_spec(spec: Any) -> Spec:
    if isinstance(spec, str):
        return parse_shorthand(spec)
    if not isinstance(spec, dict) or len(spec) != 1:
        raise UnsupportedSpec(f"constructor spec must be a one-key object, got {spec!r}")
    (kind, arg), = spec.items()
    if kind == "zn":
        if not isinstance(arg, int) or isinstance(arg, bool) or arg < 1:
            raise UnsupportedSpec(f"zn needs a positive integer, got {arg!r}")
        return {"zn": arg}
    if kind == "row_ring":
        return {"row_ring": normalize_spec(arg)}
    if kind == "product":
        if not isinstance(arg, list) or len(arg) != 2:
            raise UnsupportedSpec("product takes exactly two factor specs")
        return {"product": [normalize_spec(arg[0]), normalize_spec(arg[1])]}
    if kind in ("matrix", "upper_triangular", "strictly_upper"):
        if not isinstance(arg, dict) or set(arg) != {"base", "k"}:
            raise UnsupportedSpec(f"{kind} takes {{'base': spec, 'k': int}}")
        k = arg["k"]
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise UnsupportedSpec(f"{kind} needs k >= 1, got {k!r}")
        return {kind: {"base": normalize_spec(arg["base"]), "k": k}}
    raise UnsupportedSpec(f"unknown constructor {kind!r}")


def spec_name(spec: Any) -> str:
    """Canonical shorthand for a spec; ``parse_shorthand(spec_name(s)) == s``."""
    spec = normalize_spec(spec)
    (kind, arg), = spec.items()
    if kind == "zn":
        return f"z{arg}"
    if kind == "row_ring":
        return f"row_ring:{spec_name(arg)}"
    if kind == "product":
        return f"prod:({spec_name(arg[0])},{spec_name(arg[1])})"
    short = {v: k for k, v in _MATRIX_WORDS.items()}[kind]
    return f"{short}{arg['k']}:{spec_name(arg['base'])}"


def spec_order(spec: Any) -> int:
    """Order of the ring a spec describes, without building it."""
    spec = normalize_spec(spec)
    (kind, arg), = spec.items()
    if kind == "zn":
        return arg
    if kind == "product":
        return spec_order(arg[0]) * spec_order(arg[1])
    if kind == "row_ring":
        return spec_order(arg) ** 2
    q = spec_order(arg["base"])
    return q ** len(_positions(kind, arg["k"]))


def _positions(kind: str, k: int) -> list[tuple[int, int]]:
    if kind == "matrix":
        return [(i, j) for i in range(k) for j in range(k)]
    if kind == "upper_triangular":
        return [(i, j) for i in range(k) for j in range(i, k)]
    if kind == "strictly_upper":
        return [(i, j) for i in range(k) for j in range(i + 1, k)]
    if kind == "row_ring":
        return [(0, 0), (0, 1)]
    raise UnsupportedSpec(kind)


def construct(spec: Any, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    """Build and re-verify the ring described by ``spec``."""
    spec = normalize_spec(spec)
    n = spec_order(spec)
    if n > max_order:
        raise OrderLimitExceeded(f"{spec_name(spec)} has order {n} > cap {max_order}")
    add, mul = _tables(spec, max_order)
    return FiniteRing(spec_name(spec), add, mul)


def _tables(spec: Spec, max_order: int) -> tuple[list[list[int]], list[list[int]]]:
    (kind, arg), = spec.items()
    if kind == "zn":
        n = arg
        return ([[(a + b) % n for b in range(n)] for a in range(n)],
                [[(a * b) % n for b in range(n)] for a in range(n)])
    if kind == "product":
        a_add, a_mul = _tables(arg[0], max_order)
        b_add, b_mul = _tables(arg[1], max_order)
        na, nb = len(a_add), len(b_add)
        pairs = [(x, y) for x in range(na) for y in range(nb)]

        def enc(x: int, y: int) -> int:
            return x * nb + y

        return ([[enc(a_add[x1][x2], b_add[y1][y2]) for (x2, y2) in pairs] for (x1, y1) in pairs],
                [[enc(a_mul[x1][x2], b_mul[y1][y2]) for (x2, y2) in pairs] for (x1, y1) in pairs])
    if kind == "row_ring":
        base, k = arg, 2
    else:
        base, k = arg["base"], arg["k"]
    return _matrix_tables(_tables(base, max_order), _positions(kind, k), k)


def _matrix_tables(base_tables, positions, k):
    badd, bmul = base_tables
    q = len(badd)
    npos = len(positions)
    vectors = list(itertools.product(range(q), repeat=npos))
    slot = {p: i for i, p in enumerate(positions)}

    def encode(vec) -> int:
        idx = 0
        for v in vec:
            idx = idx * q + v
        return idx

    def as_matrix(vec):
        m = [[0] * k for _ in range(k)]
        for (i, j), v in zip(positions, vec):
            m[i][j] = v
        return m

    mats = [as_matrix(v) for v in vectors]
    add = [[encode(tuple(badd[x][y] for x, y in zip(u, v))) for v in vectors] for u in vectors]
    mul = []
    for A in mats:
        row = []
        for B in mats:
            prod = [0] * npos
            for (i, j), s in slot.items():
                acc = 0
                for t in range(k):
                    acc = badd[acc][bmul[A[i][t]][B[t][j]]]
                prod[s] = acc
            # closure of the pattern: entries outside ``positions`` must vanish
            for i in range(k):
                for j in range(k):
                    if (i, j) in slot:
                        continue
                    acc = 0
                    for t in range(k):
                        acc = badd[acc][bmul[A[i][t]][B[t][j]]]
                    if acc != 0:
                        raise UnsupportedSpec("matrix pattern is not closed under multiplication")
            row.append(encode(prod))
        mul.append(row)
    return add, mul
