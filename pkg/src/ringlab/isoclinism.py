"""Relative Z-isoclinism between ring pairs, decided by exhaustive witness search.

A witness from ``(S1, R1)`` to ``(S2, R2)`` is a pair ``(phi, psi)``:

* ``phi`` an additive isomorphism ``R1/N1 -> R2/N2`` with ``Ni = Z(Ri) ∩ Si``,
  sending the image of ``S1`` onto the image of ``S2``;
* ``psi`` an additive isomorphism ``[S1, R1] -> [S2, R2]`` with
  ``psi([s1, r1]) = [s2, r2]`` whenever ``phi`` matches the cosets of
  ``s1, r1`` with those of ``s2, r2``.

Given ``phi`` the compatibility condition pins ``psi`` down on every
commutator, and commutators generate ``[S1, R1]``, so the search runs over
``phi`` alone and derives ``psi``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import NotASubgroup, SchemaError, SizeLimitExceeded
from .graph import are_isomorphic
from .limits import DEFAULT_LIMITS, Limits
from .ring import ElementSubset, FiniteRing, commutator_subgroup
from .rncg import FAIL, NA, PASS, RingPair, build_rncg


# -- finite abelian groups --------------------------------------------------

@dataclass(frozen=True)
class AbelianStructure:
    """Invariant-factor decomposition ``Z_{d1} x ... x Z_{dk}`` with ``d1 | d2 | ...``.

    ``generators[i]`` has additive order ``invariant_factors[i]`` and
    ``coordinates`` maps every element to its coefficient vector.
    """

    order: int
    invariant_factors: tuple[int, ...]
    generators: tuple[int, ...]
    coordinates: dict[int, tuple[int, ...]]


def _element_order(x: int, add: Callable[[int, int], int], zero: int) -> int:
    k, y = 1, x
    while y != zero:
        y = add(y, x)
        k += 1
    return k


def _span(base: set[int], g: int, add: Callable[[int, int], int]) -> set[int]:
    out = set(base)
    frontier = list(base)
    while frontier:
        nxt = []
        for x in frontier:
            y = add(x, g)
            if y not in out:
                out.add(y)
                nxt.append(y)
        frontier = nxt
    return out


def decompose(elements: Sequence[int], add: Callable[[int, int], int], zero: int = 0) -> AbelianStructure:
    """Peel off generators of maximal order modulo the span found so far.

    An element of maximal order modulo the current span always has a lift of
    that same order in its coset; the coset is searched exhaustively for it.
    """
    elements = sorted(elements)
    span = {zero}
    gens: list[int] = []
    orders: list[int] = []
    while len(span) < len(elements):
        best, best_k = None, 0
        for x in elements:
            k, y = 1, x
            while y not in span:
                y = add(y, x)
                k += 1
            if k > best_k:
                best, best_k = x, k
        lift = next(
            (add(best, t) for t in sorted(span) if _element_order(add(best, t), add, zero) == best_k),
            None,
        )
        if lift is None:
            raise AssertionError("no lift of maximal order; operation is not an abelian group")
        gens.append(lift)
        orders.append(best_k)
        span = _span(span, lift, add)

    gens.reverse()
    orders.reverse()
    for a, b in zip(orders, orders[1:]):
        if b % a:
            raise AssertionError(f"invariant factors {orders} do not form a divisor chain")

    coords: dict[int, tuple[int, ...]] = {}
    for vec in itertools.product(*(range(d) for d in orders)):
        x = zero
        for c, g in zip(vec, gens):
            for _ in range(c):
                x = add(x, g)
        if x in coords:
            raise AssertionError("generators are not independent")
        coords[x] = vec
    if len(coords) != len(elements):
        raise AssertionError("generators do not span the group")
    return AbelianStructure(len(elements), tuple(orders), tuple(gens), coords)


def _check_subgroup(R: FiniteRing, members: Sequence[int]) -> None:
    ms = set(members)
    if 0 not in ms:
        raise NotASubgroup("subgroup must contain 0")
    for a in ms:
        if R.neg[a] not in ms:
            raise NotASubgroup(f"-{a} missing")
        for b in ms:
            if R.add[a][b] not in ms:
                raise NotASubgroup(f"{a} + {b} missing")


def abelian_structure(parent: FiniteRing, members: Sequence[int] | ElementSubset | None = None) -> AbelianStructure:
    if members is None:
        members = parent.elements
    members = list(members)
    _check_subgroup(parent, members)
    return decompose(members, lambda a, b: parent.add[a][b])


# -- quotients --------------------------------------------------------------

@dataclass(frozen=True)
class QuotientGroup:
    """``R/N`` with cosets numbered by their smallest element."""

    cosets: tuple[tuple[int, ...], ...]
    coset_of: tuple[int, ...]
    add: tuple[tuple[int, ...], ...]
    s_cosets: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.cosets)

    def plus(self, i: int, j: int) -> int:
        return self.add[i][j]


def quotient_group(R: FiniteRing, N: Sequence[int] | ElementSubset, S: Sequence[int] | ElementSubset | None = None) -> QuotientGroup:
    N = sorted(N)
    _check_subgroup(R, N)
    coset_of = [-1] * R.order
    cosets = []
    for x in R.elements:
        if coset_of[x] >= 0:
            continue
        c = tuple(sorted(R.add[x][n] for n in N))
        for y in c:
            coset_of[y] = len(cosets)
        cosets.append(c)
    add = tuple(
        tuple(coset_of[R.add[a[0]][b[0]]] for b in cosets) for a in cosets
    )
    s_members = R.elements if S is None else list(S)
    s_cosets = frozenset(coset_of[s] for s in s_members)
    return QuotientGroup(tuple(cosets), tuple(coset_of), add, s_cosets)


# -- witnesses --------------------------------------------------------------

@dataclass(frozen=True)
class IsoWitness:
    phi_domain: tuple[tuple[int, ...], ...]
    phi_codomain: tuple[tuple[int, ...], ...]
    phi: tuple[int, ...]  # phi[i] = image coset index of domain coset i
    psi: dict[int, int]

    def to_json(self) -> str:
        obj = {
            "phi": {
                "domain": [list(c) for c in self.phi_domain],
                "codomain": [list(c) for c in self.phi_codomain],
                "map": list(self.phi),
            },
            "psi": [[a, b] for a, b in sorted(self.psi.items())],
        }
        return json.dumps(obj, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "IsoWitness":
        try:
            obj = json.loads(text)
            phi = obj["phi"]
            return cls(
                tuple(tuple(c) for c in phi["domain"]),
                tuple(tuple(c) for c in phi["codomain"]),
                tuple(phi["map"]),
                {int(a): int(b) for a, b in obj["psi"]},
            )
        except (ValueError, KeyError, TypeError) as exc:
            raise SchemaError(f"bad witness document: {exc}") from exc


@dataclass
class _Side:
    pair: RingPair
    N: ElementSubset
    Q: QuotientGroup
    C: ElementSubset
    qstruct: AbelianStructure
    sstruct: AbelianStructure
    cstruct: AbelianStructure

    def bracket(self, i: int, j: int) -> int:
        """Commutator of coset representatives; ``i`` must be an S-coset."""
        return self.pair.R.commutator(self.Q.cosets[i][0], self.Q.cosets[j][0])


def _side(pair: RingPair, limits: Limits) -> _Side:
    R = pair.R
    N = pair.z_r_cap_s
    Q = quotient_group(R, N, pair.S)
    C = commutator_subgroup(pair.S, R)
    if Q.order > limits.isoclinism_order or len(C) > limits.isoclinism_order:
        raise SizeLimitExceeded(
            f"isoclinism search capped at order {limits.isoclinism_order}: |R/N|={Q.order}, |[S,R]|={len(C)}"
        )
    # brackets must not depend on the representative; N is central so this always holds
    for s in pair.S.members:
        for r in R.elements:
            if R.commutator(s, r) != R.commutator(Q.cosets[Q.coset_of[s]][0], Q.cosets[Q.coset_of[r]][0]):
                raise AssertionError(f"bracket not well defined on cosets at ({s}, {r})")
    qadd = lambda a, b: Q.add[a][b]
    return _Side(
        pair, N, Q, C,
        decompose(range(Q.order), qadd),
        decompose(sorted(Q.s_cosets), qadd),
        abelian_structure(R, C.members),
    )


def isoclinism_obstruction(pair1: RingPair, pair2: RingPair, limits: Limits = DEFAULT_LIMITS) -> str | None:
    """A cheap invariant that rules out any witness, or None if none applies."""
    a, b = _side(pair1, limits), _side(pair2, limits)
    return _obstruction(a, b)


def _obstruction(a: _Side, b: _Side) -> str | None:
    if a.Q.order != b.Q.order:
        return f"quotient orders {a.Q.order} != {b.Q.order}"
    if a.qstruct.invariant_factors != b.qstruct.invariant_factors:
        return f"quotient invariants {list(a.qstruct.invariant_factors)} != {list(b.qstruct.invariant_factors)}"
    if a.sstruct.invariant_factors != b.sstruct.invariant_factors:
        return f"subring-image invariants {list(a.sstruct.invariant_factors)} != {list(b.sstruct.invariant_factors)}"
    if a.cstruct.invariant_factors != b.cstruct.invariant_factors:
        return f"commutator-subgroup invariants {list(a.cstruct.invariant_factors)} != {list(b.cstruct.invariant_factors)}"
    return None


def _extend_psi(R2: FiniteRing, R1: FiniteRing, seed: dict[int, int], C1: ElementSubset, C2: ElementSubset) -> dict[int, int] | None:
    """Additive closure of a commutator map; None on conflict or if not bijective."""
    psi = dict(seed)
    psi.setdefault(0, 0)
    if psi[0] != 0:
        return None
    known = list(psi)
    k = 0
    while k < len(known):
        x = known[k]
        for y in known[: k + 1]:
            z = R1.add[x][y]
            img = R2.add[psi[x]][psi[y]]
            if z in psi:
                if psi[z] != img:
                    return None
            else:
                psi[z] = img
                known.append(z)
        k += 1
    if set(psi) != C1.as_set or set(psi.values()) != C2.as_set or len(set(psi.values())) != len(psi):
        return None
    return psi


def find_isoclinism(
    pair1: RingPair,
    pair2: RingPair,
    limits: Limits = DEFAULT_LIMITS,
    prune: bool = True,
) -> IsoWitness | None:
    """First witness in deterministic search order, or None after exhausting all maps.

    With ``prune=False`` the invariant-factor shortcuts are skipped and the
    search runs over every assignment of generator images.
    """
    a, b = _side(pair1, limits), _side(pair2, limits)
    if a.Q.order != b.Q.order or len(a.C) != len(b.C) or len(a.Q.s_cosets) != len(b.Q.s_cosets):
        return None
    if prune and _obstruction(a, b) is not None:
        return None
    Q1, Q2 = a.Q, b.Q
    R1, R2 = pair1.R, pair2.R
    st = a.qstruct
    # generators by descending additive order, then index
    gen_order = sorted(range(len(st.generators)), key=lambda i: (-st.invariant_factors[i], st.generators[i]))
    gens = [st.generators[i] for i in gen_order]
    coords = {x: tuple(v[i] for i in gen_order) for x, v in st.coordinates.items()}
    q2_order = {h: _element_order(h, Q2.plus, 0) for h in range(Q2.order)}
    q1_gen_order = [_element_order(g, Q1.plus, 0) for g in gens]

    def mult(h: int, c: int) -> int:
        x = 0
        for _ in range(c):
            x = Q2.plus(x, h)
        return x

    levels = [[x for x in range(Q1.order) if all(c == 0 for c in coords[x][k:])] for k in range(len(gens) + 1)]

    def image(x: int, imgs: list[int]) -> int:
        y = 0
        for c, h in zip(coords[x], imgs):
            if c:
                y = Q2.plus(y, mult(h, c))
        return y

    def consistent(imgs: list[int]) -> dict[int, int] | None:
        H = levels[len(imgs)]
        phi = {x: image(x, imgs) for x in H}
        if len(set(phi.values())) != len(phi):
            return None
        for x in H:
            if (x in Q1.s_cosets) != (phi[x] in Q2.s_cosets):
                return None
        psi: dict[int, int] = {}
        back: dict[int, int] = {}
        for x in H:
            if x not in Q1.s_cosets:
                continue
            for y in H:
                u, v = a.bracket(x, y), b.bracket(phi[x], phi[y])
                if psi.setdefault(u, v) != v or back.setdefault(v, u) != u:
                    return None
        return psi

    def search(imgs: list[int]) -> IsoWitness | None:
        k = len(imgs)
        if k == len(gens):
            seed = consistent(imgs)
            if seed is None:
                return None
            phi = tuple(image(x, imgs) for x in range(Q1.order))
            if any(phi[Q1.plus(x, y)] != Q2.plus(phi[x], phi[y]) for x in range(Q1.order) for y in range(Q1.order)):
                return None
            psi = _extend_psi(R2, R1, seed, a.C, b.C)
            if psi is None:
                return None
            return IsoWitness(Q1.cosets, Q2.cosets, phi, psi)
        want = q1_gen_order[k]
        in_s = gens[k] in Q1.s_cosets
        for h in range(Q2.order):
            if prune and (q2_order[h] != want or (h in Q2.s_cosets) != in_s):
                continue
            cand = imgs + [h]
            if prune and consistent(cand) is None:
                continue
            found = search(cand)
            if found is not None:
                return found
        return None

    return search([])


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str = ""
    quadruple: tuple[int, int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_witness(pair1: RingPair, pair2: RingPair, w: IsoWitness) -> VerifyResult:
    """Re-check every witness condition from scratch, independent of the search."""
    R1, R2 = pair1.R, pair2.R
    Q1 = quotient_group(R1, pair1.z_r_cap_s, pair1.S)
    Q2 = quotient_group(R2, pair2.z_r_cap_s, pair2.S)
    if w.phi_domain != Q1.cosets or w.phi_codomain != Q2.cosets:
        return VerifyResult(False, "coset lists do not match the quotients")
    phi = w.phi
    if len(phi) != Q1.order or sorted(phi) != list(range(Q2.order)):
        return VerifyResult(False, "phi is not a bijection of cosets")
    for i in range(Q1.order):
        for j in range(Q1.order):
            if phi[Q1.add[i][j]] != Q2.add[phi[i]][phi[j]]:
                return VerifyResult(False, f"phi not additive at cosets ({i}, {j})")
    if {phi[i] for i in Q1.s_cosets} != set(Q2.s_cosets):
        return VerifyResult(False, "phi does not carry the image of S1 onto that of S2")

    C1 = commutator_subgroup(pair1.S, R1)
    C2 = commutator_subgroup(pair2.S, R2)
    psi = w.psi
    if set(psi) != C1.as_set or sorted(psi.values()) != list(C2.members):
        return VerifyResult(False, "psi is not a bijection [S1,R1] -> [S2,R2]")
    for x in C1:
        for y in C1:
            if psi[R1.add[x][y]] != R2.add[psi[x]][psi[y]]:
                return VerifyResult(False, f"psi not additive at ({x}, {y})")

    S2 = pair2.S.as_set
    for s1 in pair1.S.members:
        cs = Q2.cosets[phi[Q1.coset_of[s1]]]
        for r1 in R1.elements:
            cr = Q2.cosets[phi[Q1.coset_of[r1]]]
            lhs = psi[R1.commutator(s1, r1)]
            for s2 in cs:
                if s2 not in S2:
                    continue
                for r2 in cr:
                    if lhs != R2.commutator(s2, r2):
                        return VerifyResult(False, "compatibility fails", (s1, r1, s2, r2))
    return VerifyResult(True)


# -- the graph-isomorphism conclusion ----------------------------------------

def theorem51_report(pair1: RingPair, pair2: RingPair, limits: Limits = DEFAULT_LIMITS) -> dict:
    """Isoclinic pairs with equal ``|Z(R)∩S|`` and ``|Z(R)|`` must have isomorphic graphs."""
    w = find_isoclinism(pair1, pair2, limits)
    same_zs = len(pair1.z_r_cap_s) == len(pair2.z_r_cap_s)
    same_z = len(pair1.z_r) == len(pair2.z_r)
    out: dict = {
        "pair1": pair1.name,
        "pair2": pair2.name,
        "isoclinic": w is not None,
        "equal_center_cap_subring": same_zs,
        "equal_center": same_z,
    }
    if w is None:
        try:
            out["obstruction"] = isoclinism_obstruction(pair1, pair2, limits) or "exhaustive search found no witness"
        except SizeLimitExceeded as exc:
            out["obstruction"] = str(exc)
    if w is not None and same_zs and same_z:
        G1, G2 = build_rncg(pair1), build_rncg(pair2)
        bij = are_isomorphic(G1, G2, limits.iso_vertices)
        out["status"] = PASS if bij is not None else FAIL
        out["bijection"] = None if bij is None else [[k, v] for k, v in bij.items()]
    else:
        out["status"] = NA
    return out


def corollary_report(R: FiniteRing, S, T, limits: Limits = DEFAULT_LIMITS) -> dict:
    """Two subrings of one ring: isoclinic with equal ``|Z(R)∩S|`` forces ``Γ_S ≅ Γ_T``."""
    p, q = RingPair(R, S), RingPair(R, T)
    w = find_isoclinism(p, q, limits)
    same_zs = len(p.z_r_cap_s) == len(q.z_r_cap_s)
    out: dict = {"pair1": p.name, "pair2": q.name, "isoclinic": w is not None, "equal_center_cap_subring": same_zs}
    if w is not None and same_zs:
        G1 = build_rncg(RingPair.whole(S.as_ring()))
        G2 = build_rncg(RingPair.whole(T.as_ring()))
        # standalone rings renumber elements, so compare up to isomorphism only
        out["status"] = PASS if are_isomorphic(G1, G2, limits.iso_vertices) is not None else FAIL
    else:
        out["status"] = NA
    return out
