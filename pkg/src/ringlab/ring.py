"""Finite rings given by Cayley tables, their subsets, subrings and centralizers.

Elements of a ring of order ``n`` are the integers ``0..n-1`` and ``0`` is
always the additive identity. Multiplication need not have a unity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    NotAGroup,
    NotASubring,
    NotAssociative,
    NotDistributive,
    OrderLimitExceeded,
    ParentMismatch,
    RingLabError,
)

Table = tuple[tuple[int, ...], ...]

DEFAULT_SUBRING_ENUM_CAP = 64


def _as_table(rows: Sequence[Sequence[int]], label: str) -> Table:
    n = len(rows)
    out = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise RingLabError(f"{label} table row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or not 0 <= v < n:
                raise RingLabError(f"{label}[{i}][{j}] = {v!r} is not an element index in 0..{n - 1}")
        out.append(tuple(int(v) for v in row))
    return tuple(out)


def _first_true(mask: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def check_ring_axioms(add: Table, mul: Table) -> None:
    """Exhaustively verify the ring axioms, raising on the first witness found.

    Witnesses are reported in lexicographic order of the offending tuple.
    """
    n = len(add)
    if n == 0:
        raise NotAGroup("a ring needs at least one element")
    A = np.asarray(add, dtype=np.int64)
    M = np.asarray(mul, dtype=np.int64)
    idx = np.arange(n)

    bad = _first_true(A[0] != idx)
    if bad is not None:
        x = bad[0]
        raise NotAGroup(f"0 is not an additive identity: 0 + {x} = {A[0, x]}", (0, x))
    bad = _first_true(A[:, 0] != idx)
    if bad is not None:
        x = bad[0]
        raise NotAGroup(f"0 is not an additive identity: {x} + 0 = {A[x, 0]}", (x, 0))
    bad = _first_true(A != A.T)
    if bad is not None:
        raise NotAGroup(f"addition is not commutative at {bad}", bad)
    bad = _first_true(~(A == 0).any(axis=1))
    if bad is not None:
        raise NotAGroup(f"element {bad[0]} has no additive inverse", bad)

    # a over rows, (b, c) per slice keeps memory at O(n^2)
    for a in range(n):
        # (a+b)+c == a+(b+c)
        bad = _first_true(A[A[a]][:, :] != A[a][A])
        if bad is not None:
            b, c = bad
            raise NotAGroup(f"addition is not associative at {(a, b, c)}", (a, b, c))
    for a in range(n):
        bad = _first_true(M[M[a]] != M[a][M])
        if bad is not None:
            b, c = bad
            raise NotAssociative(f"multiplication is not associative at {(a, b, c)}", (a, b, c))
    for a in range(n):
        # a(b+c) == ab + ac
        left = M[a][A]
        right = A[M[a][:, None], M[a][None, :]]
        bad = _first_true(left != right)
        if bad is not None:
            b, c = bad
            raise NotDistributive(f"left distributivity fails at {(a, b, c)}", (a, b, c))
    for a in range(n):
        # (b+c)a == ba + ca
        left = M[:, a][A]
        right = A[M[:, a][:, None], M[:, a][None, :]]
        bad = _first_true(left != right)
        if bad is not None:
            b, c = bad
            raise NotDistributive(f"right distributivity fails at {(b, c, a)}", (b, c, a))


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A finite ring over the elements ``0..n-1``; tables are validated on construction."""

    name: str
    add: Table
    mul: Table
    validate: bool = field(default=True, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "add", _as_table(self.add, "add"))
        object.__setattr__(self, "mul", _as_table(self.mul, "mul"))
        if len(self.mul) != len(self.add):
            raise RingLabError("add and mul tables differ in size")
        if self.validate:
            check_ring_axioms(self.add, self.mul)

    @property
    def order(self) -> int:
        return len(self.add)

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def neg(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.add)

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def commutes(self, a: int, b: int) -> bool:
        return self.mul[a][b] == self.mul[b][a]

    def commutator(self, a: int, b: int) -> int:
        """``ab - ba``."""
        return self.sub(self.mul[a][b], self.mul[b][a])

    def same_as(self, other: "FiniteRing") -> bool:
        return self is other or (self.add == other.add and self.mul == other.mul)

    def full(self) -> "Subring":
        return Subring(self, self.elements)

    def subset(self, members: Iterable[int]) -> "ElementSubset":
        return ElementSubset(self, members)

    def __repr__(self) -> str:
        return f"FiniteRing({self.name!r}, order={self.order})"


@dataclass(frozen=True, eq=False)
class ElementSubset:
    """A duplicate-free, sorted set of elements of ``parent``; not necessarily closed."""

    parent: FiniteRing
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        ms = sorted(set(int(m) for m in self.members))
        n = self.parent.order
        for m in ms:
            if not 0 <= m < n:
                raise RingLabError(f"element {m} is not in ring {self.parent.name} of order {n}")
        object.__setattr__(self, "members", tuple(ms))

    @cached_property
    def as_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __contains__(self, x: object) -> bool:
        return x in self.as_set

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSubset):
            return NotImplemented
        return self.parent.same_as(other.parent) and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.parent.order, self.members))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.parent.name!r}, {list(self.members)})"


class Subring(ElementSubset):
    """An element subset closed under addition, negation and multiplication."""

    def __post_init__(self) -> None:
        super().__post_init__()
        R = self.parent
        ms = self.as_set
        if 0 not in ms:
            raise NotASubring("subring must contain 0")
        for a in self.members:
            if R.neg[a] not in ms:
                raise NotASubring(f"-{a} = {R.neg[a]} missing")
            for b in self.members:
                if R.add[a][b] not in ms:
                    raise NotASubring(f"{a} + {b} = {R.add[a][b]} missing")
                if R.mul[a][b] not in ms:
                    raise NotASubring(f"{a} * {b} = {R.mul[a][b]} missing")

    @property
    def is_whole(self) -> bool:
        return len(self.members) == self.parent.order

    def is_commutative(self) -> bool:
        R = self.parent
        ms = self.members
        return all(R.mul[a][b] == R.mul[b][a] for i, a in enumerate(ms) for b in ms[i + 1:])

    def as_ring(self, name: str | None = None) -> FiniteRing:
        """The subring as a standalone ring, elements renumbered in ascending order."""
        pos = {m: i for i, m in enumerate(self.members)}
        R = self.parent
        add = [[pos[R.add[a][b]] for b in self.members] for a in self.members]
        mul = [[pos[R.mul[a][b]] for b in self.members] for a in self.members]
        label = name or f"{R.name}{{{','.join(map(str, self.members))}}}"
        return FiniteRing(label, add, mul, validate=False)


Scope = Union[FiniteRing, ElementSubset]


def _members(x: Scope) -> tuple[FiniteRing, Sequence[int]]:
    if isinstance(x, FiniteRing):
        return x, x.elements
    return x.parent, x.members


def centralizer(scope: Scope, targets: Scope) -> ElementSubset:
    """``{x in scope : xt = tx for every t in targets}``.

    ``C_R(r)`` is ``centralizer(R, R.subset([r]))``, ``Z(S)`` is
    ``centralizer(S, S)`` and so on.
    """
    R, xs = _members(scope)
    R2, ts = _members(targets)
    if not R.same_as(R2):
        raise ParentMismatch(f"scope lives in {R.name}, targets in {R2.name}")
    mul = R.mul
    out = [x for x in xs if all(mul[x][t] == mul[t][x] for t in ts)]
    return ElementSubset(R, out)


def center(scope: Scope) -> ElementSubset:
    return centralizer(scope, scope)


def _close(R: FiniteRing, base: Iterable[int], new: Iterable[int], ring_ops: bool = True) -> set[int]:
    """Worklist closure. ``base`` must already be closed; ``new`` are the fresh seeds."""
    add, mul, neg = R.add, R.mul, R.neg
    members = set(base)
    members.add(0)
    order = list(members)
    queue = [g for g in new if g not in members]
    for g in queue:
        members.add(g)
        order.append(g)
    while queue:
        x = queue.pop()
        fresh = [neg[x]]
        for y in order:
            fresh.append(add[x][y])
            if ring_ops:
                fresh.append(mul[x][y])
                fresh.append(mul[y][x])
        for z in fresh:
            if z not in members:
                members.add(z)
                order.append(z)
                queue.append(z)
    return members


def subring_generated(R: FiniteRing, gens: Iterable[int] | ElementSubset) -> Subring:
    """Smallest subring containing ``gens``."""
    if isinstance(gens, ElementSubset):
        if not gens.parent.same_as(R):
            raise ParentMismatch("generators belong to a different ring")
        gens = gens.members
    return Subring(R, _close(R, (), list(gens)))


def additive_closure(R: FiniteRing, gens: Iterable[int]) -> ElementSubset:
    """The additive subgroup generated by ``gens``."""
    return ElementSubset(R, _close(R, (), list(gens), ring_ops=False))


def enumerate_subrings(R: FiniteRing, max_order: int = DEFAULT_SUBRING_ENUM_CAP) -> list[Subring]:
    """All subrings of ``R``, sorted by (size, members).

    Breadth-first search: every subring arises from ``{0}`` by adjoining one
    element at a time and closing.
    """
    if R.order > max_order:
        raise OrderLimitExceeded(f"subring enumeration capped at order {max_order}, ring has {R.order}")
    start = frozenset({0})
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            for g in R.elements:
                if g in S:
                    continue
                T = frozenset(_close(R, S, (g,)))
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    found = sorted(seen, key=lambda s: (len(s), sorted(s)))
    return [Subring(R, s) for s in found]


@dataclass(frozen=True)
class RingPredicates:
    commutative: bool
    unity: int | None
    smallest_prime_of_order: int | None


def smallest_prime_factor(n: int) -> int | None:
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


def find_unity(R: FiniteRing) -> int | None:
    mul = R.mul
    for e in R.elements:
        if all(mul[e][x] == x and mul[x][e] == x for x in R.elements):
            return e
    return None


def ring_predicates(R: FiniteRing) -> RingPredicates:
    n = R.order
    commutative = all(R.mul[a][b] == R.mul[b][a] for a in range(n) for b in range(a + 1, n))
    return RingPredicates(commutative, find_unity(R), smallest_prime_factor(n))


def commutator_subgroup(S: Scope, R: FiniteRing | None = None) -> ElementSubset:
    """Additive subgroup ``[S, R]`` generated by all ``sr - rs``."""
    parent, ss = _members(S)
    if R is None:
        R = parent
    elif not R.same_as(parent):
        raise ParentMismatch("S is not inside R")
    comms = {R.commutator(s, r) for s in ss for r in R.elements}
    return additive_closure(R, sorted(comms))


def additive_order(R: FiniteRing, x: int) -> int:
    k, y = 1, x
    while y != 0:
        y = R.add[y][x]
        k += 1
    return k
