"""Ring files, catalogs of (ring, subring) pairs, and canonical JSON reports."""

from __future__ import annotations

import json
import os
import re
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .construct import construct, parse_shorthand
from .errors import ParseError, RingLabError, SchemaError
from .limits import DEFAULT_LIMITS, Limits
from .ring import FiniteRing, Subring, enumerate_subrings, subring_generated
from .rncg import RingPair

# -- ring files -------------------------------------------------------------


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}:{exc.colno}") from exc


def _table(obj: Any, n: int, key: str) -> list[list[int]]:
    if not isinstance(obj, list) or len(obj) != n:
        raise ParseError(f"expected a list of {n} rows", key)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != n:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise ParseError(f"row has {got} entries, expected {n}", f"{key}[{i}]")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise ParseError(f"entry {v!r} is not an element index", f"{key}[{i}][{j}]")
    return obj


def ring_from_obj(obj: Any, max_order: int = DEFAULT_LIMITS.max_order) -> FiniteRing:
    if not isinstance(obj, dict):
        raise ParseError("ring document must be a JSON object", "$")
    if "construct" in obj:
        return construct(obj["construct"], max_order)
    for key in ("name", "order", "add", "mul"):
        if key not in obj:
            raise ParseError(f"missing key {key!r}", "$")
    n = obj["order"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"order must be a positive integer, got {n!r}", "order")
    if not isinstance(obj["name"], str):
        raise ParseError("name must be a string", "name")
    return FiniteRing(obj["name"], _table(obj["add"], n, "add"), _table(obj["mul"], n, "mul"))


def parse_ring_file(text: str, max_order: int = DEFAULT_LIMITS.max_order) -> FiniteRing:
    """Parse a ring document: literal tables, or ``{"construct": spec}``."""
    return ring_from_obj(_load_json(text), max_order)


def serialize_ring(R: FiniteRing) -> str:
    obj = {"name": R.name, "order": R.order, "add": [list(r) for r in R.add], "mul": [list(r) for r in R.mul]}
    return json.dumps(obj, sort_keys=True) + "\n"


def subring_from_obj(R: FiniteRing, obj: Any) -> Subring:
    if obj is None or obj == "all":
        return R.full()
    if isinstance(obj, dict) and "members" in obj:
        return Subring(R, obj["members"])
    if isinstance(obj, dict) and "gens" in obj:
        return subring_generated(R, obj["gens"])
    raise ParseError(f"subring must be 'all', {{'members': [...]}} or {{'gens': [...]}}, got {obj!r}", "subring")


def parse_subring_arg(R: FiniteRing, text: str | None) -> Subring:
    """``all``, ``members:0,2,4,6`` (or bare ``0,2,4,6``) or ``gens:2,6`` as used on the command line."""
    if text is None or text == "all":
        return R.full()
    kind, _, rest = text.partition(":")
    if not rest and kind.replace(",", "").replace(" ", "").isdigit():
        kind, rest = "members", kind
    try:
        items = [int(x) for x in rest.split(",") if x.strip()]
    except ValueError as exc:
        raise ParseError(f"bad element list {rest!r}", "--subring") from exc
    if kind == "members":
        return Subring(R, items)
    if kind == "gens":
        return subring_generated(R, items)
    raise ParseError(f"unknown subring form {text!r}", "--subring")


def load_ring(source: str, max_order: int = DEFAULT_LIMITS.max_order) -> FiniteRing:
    """A ring from a file path or a constructor shorthand like ``ut2:z2``."""
    path = Path(source)
    if path.is_file():
        return parse_ring_file(path.read_text(encoding="utf-8"), max_order)
    return construct(parse_shorthand(source), max_order)


def load_pair(source: str, max_order: int = DEFAULT_LIMITS.max_order) -> RingPair:
    """A pair from a ring file with optional ``"subring"`` key, or ``ring[@members:..|@gens:..]``."""
    path = Path(source)
    if path.is_file():
        obj = _load_json(path.read_text(encoding="utf-8"))
        if not isinstance(obj, dict):
            raise ParseError("ring document must be a JSON object", "$")
        R = ring_from_obj({k: v for k, v in obj.items() if k != "subring"}, max_order)
        return RingPair(R, subring_from_obj(R, obj.get("subring")))
    spec, _, sub = source.partition("@")
    R = load_ring(spec, max_order)
    return RingPair(R, parse_subring_arg(R, sub or None))


# -- catalogs ---------------------------------------------------------------

DEFAULT_CONFIG: dict = {
    "rings": [
        {"spec": "row_ring:z2", "subrings": "all"},
        {"spec": "ut2:z2", "subrings": "all"},
        {"spec": "mat2:z2", "subrings": "all"},
        {"spec": "prod:(row_ring:z2,z2)", "subrings": "all"},
        {"spec": "sut3:z2", "subrings": "all"},
    ] + [{"spec": f"z{k}", "subrings": "all"} for k in range(2, 9)],
}


@dataclass(frozen=True)
class CatalogEntry:
    pair: RingPair
    provenance: str

    @property
    def name(self) -> str:
        return self.pair.name


@dataclass(frozen=True)
class Catalog:
    entries: tuple[CatalogEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def find(self, name: str) -> CatalogEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def build_catalog(config: dict | None, base_dir: str | Path = ".", limits: Limits = DEFAULT_LIMITS) -> Catalog:
    """Expand a catalog config into pairs, in config order then subring order.

    Each ring item is ``{"spec": ...}`` or ``{"file": path}`` plus a subring
    policy: ``"all"``, ``{"generated": [[gens], ...]}``, ``{"members": [[...], ...]}``
    or ``"whole"`` (S = R only).
    """
    if not config:
        return Catalog(())
    if not isinstance(config, dict) or not isinstance(config.get("rings", []), list):
        raise SchemaError("catalog config must be an object with a 'rings' list")
    entries: list[CatalogEntry] = []
    seen: set[str] = set()
    for k, item in enumerate(config.get("rings", [])):
        if "spec" in item:
            spec = item["spec"]
            R = construct(parse_shorthand(spec) if isinstance(spec, str) else spec, limits.max_order)
            prov = f"construct:{R.name}"
        elif "file" in item:
            path = Path(base_dir) / item["file"]
            R = parse_ring_file(path.read_text(encoding="utf-8"), limits.max_order)
            prov = f"file:{item['file']}"
        else:
            raise SchemaError(f"rings[{k}] needs 'spec' or 'file'")
        policy = item.get("subrings", "all")
        for S in _subrings(R, policy, limits):
            pair = RingPair(R, S)
            if pair.name in seen:
                continue
            seen.add(pair.name)
            entries.append(CatalogEntry(pair, prov))
    return Catalog(tuple(entries))


def _subrings(R: FiniteRing, policy: Any, limits: Limits) -> list[Subring]:
    if policy == "all":
        return enumerate_subrings(R, limits.subring_enum_order)
    if policy == "whole":
        return [R.full()]
    if isinstance(policy, dict) and "generated" in policy:
        return [subring_generated(R, g) for g in policy["generated"]]
    if isinstance(policy, dict) and "members" in policy:
        return [Subring(R, m) for m in policy["members"]]
    raise SchemaError(f"unknown subring policy {policy!r}")


def load_config(source: str) -> tuple[dict, Path]:
    if source == "default":
        return DEFAULT_CONFIG, Path(".")
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise RingLabError(f"cannot read catalog config {source}: {exc}") from exc
    return _load_json(text), path.parent


# -- reports ----------------------------------------------------------------

_RATIONAL = re.compile(r"^-?\d+/\d+$")
PAIR_KEYS = ("ring", "subring", "vertices", "edges", "pr_sr", "pr_s", "checks", "bounds", "class")


def _encode(x: Any) -> Any:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): _encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_encode(v) for v in x]
    return x


def _decode(x: Any) -> Any:
    if isinstance(x, str) and _RATIONAL.match(x):
        p, q = x.split("/")
        return Fraction(int(p), int(q))
    if isinstance(x, dict):
        return {k: _decode(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_decode(v) for v in x]
    return x


def dumps_report(results: dict) -> str:
    """Canonical report text: sorted keys, rationals as ``"p/q"``, trailing newline."""
    return json.dumps(_encode(results), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def loads_report(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"report is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or not isinstance(obj.get("pairs"), list):
        raise SchemaError("report must be an object with a 'pairs' list")
    for i, p in enumerate(obj["pairs"]):
        missing = [k for k in PAIR_KEYS if not isinstance(p, dict) or k not in p]
        if missing:
            raise SchemaError(f"pairs[{i}] lacks {missing}")
    return _decode(obj)


def write_text_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_report(results: dict, path: str | Path) -> None:
    write_text_atomic(path, dumps_report(results))


def read_report(path: str | Path) -> dict:
    return loads_report(Path(path).read_text(encoding="utf-8"))


def entry_names(catalog: Iterable[CatalogEntry]) -> list[str]:
    return [e.name for e in catalog]
