"""The relative non-commuting graph of a subring and the checks run against it.

For a subring ``S`` of a finite ring ``R`` the graph has vertex set
``R \\ C_R(S)``; distinct vertices ``a, b`` are adjacent when at least one of
them lies in ``S`` and ``ab != ba``.

Every check returns a :class:`Check` with a tri-state status. A check whose
hypotheses do not hold is ``"na"``, never a pass.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import NotAGeneratingSet, NotAVertexSubset, NoUnity, SizeLimitExceeded
from .graph import (
    INF,
    NCGraph,
    chromatic_index,
    classify,
    is_dominating,
    metrics,
    minimum_dominating_set,
)
from .limits import DEFAULT_LIMITS, Limits
from .ring import ElementSubset, FiniteRing, Subring, center, centralizer, ring_predicates, subring_generated

PASS, FAIL, NA, INDETERMINATE = "pass", "fail", "na", "indeterminate"

# Failures of THEOREM and ASSUMPTION checks are hard; the other kinds are evidence.
THEOREM, ASSUMPTION, REPORTED, CONJECTURE = "theorem", "assumption", "reported", "conjecture"
HARD_KINDS = (THEOREM, ASSUMPTION)

FIVE_EIGHTHS = Fraction(5, 8)


@dataclass(frozen=True)
class Check:
    status: str
    kind: str = THEOREM
    detail: str = ""

    @property
    def hard_failure(self) -> bool:
        return self.status == FAIL and self.kind in HARD_KINDS


def _verdict(ok: bool, kind: str = THEOREM, detail: str = "") -> Check:
    return Check(PASS if ok else FAIL, kind, detail)


def _na(kind: str = THEOREM, detail: str = "") -> Check:
    return Check(NA, kind, detail)


@dataclass(frozen=True, eq=False)
class RingPair:
    R: FiniteRing
    S: Subring

    def __post_init__(self) -> None:
        if not self.S.parent.same_as(self.R):
            raise ValueError("S is not a subring of R")

    @classmethod
    def whole(cls, R: FiniteRing) -> "RingPair":
        return cls(R, R.full())

    @property
    def name(self) -> str:
        label = "R" if self.S.is_whole else "{" + ",".join(map(str, self.S.members)) + "}"
        return f"{self.R.name}|{label}"

    @cached_property
    def c_r_s(self) -> ElementSubset:
        return centralizer(self.R, self.S)

    @cached_property
    def z_r(self) -> ElementSubset:
        return center(self.R)

    @cached_property
    def z_s(self) -> ElementSubset:
        return center(self.S)

    @cached_property
    def z_r_cap_s(self) -> ElementSubset:
        return ElementSubset(self.R, self.z_r.as_set & self.S.as_set)

    @cached_property
    def s_commutative(self) -> bool:
        return self.S.is_commutative()

    @cached_property
    def predicates(self):
        return ring_predicates(self.R)

    @cached_property
    def vertex_set(self) -> tuple[int, ...]:
        c = self.c_r_s.as_set
        return tuple(x for x in self.R.elements if x not in c)


def build_rncg(pair: RingPair) -> NCGraph:
    R, S = pair.R, pair.S.as_set
    verts = pair.vertex_set
    edges = []
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            if (a in S or b in S) and R.mul[a][b] != R.mul[b][a]:
                edges.append((a, b))
    return NCGraph.from_edges(verts, edges)


@dataclass(frozen=True)
class ProbabilityReport:
    pr_SR: Fraction
    pr_S: Fraction
    commuting_pair_count: int


def commuting_probability(pair: RingPair) -> ProbabilityReport:
    R, S = pair.R, pair.S.members
    mul = R.mul
    count = sum(1 for s in S for r in R.elements if mul[s][r] == mul[r][s])
    within = sum(1 for s in S for t in S if mul[s][t] == mul[t][s])
    return ProbabilityReport(
        Fraction(count, len(S) * R.order),
        Fraction(within, len(S) ** 2),
        count,
    )


def edge_count_via_formula(pair: RingPair, prob: ProbabilityReport | None = None) -> Fraction:
    """``|S||R|(1 - Pr(S,R)) - |S|^2 (1 - Pr(S)) / 2``, evaluated exactly."""
    prob = prob or commuting_probability(pair)
    s, r = len(pair.S), pair.R.order
    return s * r * (1 - prob.pr_SR) - Fraction(s * s, 2) * (1 - prob.pr_S)


@dataclass(frozen=True)
class DegreeRow:
    vertex: int
    in_s: bool
    degree: int
    formula: int
    match: bool


def degree_check(pair: RingPair, G: NCGraph | None = None) -> list[DegreeRow]:
    """Graph degree of every vertex next to its closed-form prediction.

    Vertices of ``S`` are predicted ``|R| - |C_R(v)|``, the others
    ``|S| - |C_S(v)|``.
    """
    G = G or build_rncg(pair)
    R, S = pair.R, pair.S
    rows = []
    for v in G.vertices:
        single = R.subset([v])
        if v in S:
            formula = R.order - len(centralizer(R, single))
        else:
            formula = len(S) - len(centralizer(S, single))
        d = G.degree(v)
        rows.append(DegreeRow(v, v in S, d, formula, d == formula))
    return rows


def _squarefree_odd(n: int) -> bool:
    if n <= 0 or n % 2 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 2
    return True


@dataclass
class Analysis:
    """Everything computed once per pair and shared by the individual checks."""

    pair: RingPair
    graph: NCGraph
    prob: ProbabilityReport
    metrics: object
    shape: object
    coloring: object | None
    coloring_note: str = ""


def analyse(pair: RingPair, limits: Limits = DEFAULT_LIMITS) -> Analysis:
    G = build_rncg(pair)
    coloring, note = None, ""
    try:
        coloring = chromatic_index(G, limits.edge_color_edges, limits.edge_color_timeout_ms)
        if coloring.vizing_class == INDETERMINATE:
            note = f"edge colouring search timed out after {coloring.nodes} nodes"
    except SizeLimitExceeded as exc:
        note = str(exc)
    return Analysis(pair, G, commuting_probability(pair), metrics(G), classify(G), coloring, note)


def theorem_suite(pair: RingPair, analysis: Analysis | None = None) -> dict[str, Check]:
    """Structural and metric claims about the graph, each gated on its hypotheses."""
    a = analysis or analyse(pair)
    G, m, shape = a.graph, a.metrics, a.shape
    noncomm = not pair.s_commutative
    proper = not pair.S.is_whole
    checks: dict[str, Check] = {}

    rows = degree_check(pair, G)
    in_s = [r for r in rows if r.in_s]
    outside = [r for r in rows if not r.in_s]
    bad_in = [r.vertex for r in in_s if not r.match]
    bad_out = [r.vertex for r in outside if not r.match]
    checks["degree_formula_in_s"] = (
        _verdict(not bad_in, detail=f"mismatch at {bad_in}" if bad_in else "") if in_s else _na()
    )
    checks["degree_formula_outside_s"] = (
        _verdict(not bad_out, REPORTED, f"mismatch at {bad_out}" if bad_out else "")
        if noncomm and outside else _na(REPORTED)
    )

    checks["edgeless_iff_commutative"] = _verdict(shape.empty_edges == pair.s_commutative)
    if noncomm:
        checks["connected"] = _verdict(m.connected, detail="" if m.connected else "graph is disconnected")
        isolated = [v for v, d in m.degree_map.items() if d == 0]
        checks["no_isolated_vertex"] = _verdict(not isolated, detail=f"isolated {isolated}" if isolated else "")
        checks["not_star"] = _verdict(not shape.star)
        n = shape.regular
        checks["not_squarefree_odd_regular"] = _verdict(
            n is None or not _squarefree_odd(n), detail=f"{n}-regular" if n is not None else ""
        )
    else:
        for name in ("connected", "no_isolated_vertex", "not_star", "not_squarefree_odd_regular"):
            checks[name] = _na()
    checks["not_bipartite"] = _verdict(not shape.bipartite) if noncomm and proper else _na()
    checks["not_complete"] = _verdict(not shape.complete) if pair.predicates.unity is not None else _na()

    if noncomm and len(pair.z_s) == 1:
        if pair.S.is_whole and shape.complete:
            checks["diameter_two"] = _verdict(
                m.diameter in (1, 2), detail=f"whole ring with complete graph: diameter {m.diameter}"
            )
        else:
            checks["diameter_two"] = _verdict(m.diameter == 2, detail=f"diameter {m.diameter}")
        checks["girth_three"] = _verdict(m.girth == 3, detail=f"girth {m.girth}")
    else:
        checks["diameter_two"] = _na()
        checks["girth_three"] = _na()

    cls = a.coloring.vizing_class if a.coloring is not None else INDETERMINATE
    if pair.S.is_whole and noncomm:
        checks["full_ring_class_two"] = (
            Check(INDETERMINATE, THEOREM, a.coloring_note) if cls == INDETERMINATE
            else _verdict(cls == 2, detail=f"class {cls}")
        )
    else:
        checks["full_ring_class_two"] = _na()
    if proper and noncomm:
        checks["proper_subring_class_one"] = (
            Check(INDETERMINATE, CONJECTURE, a.coloring_note) if cls == INDETERMINATE
            else _verdict(cls == 1, CONJECTURE, f"class {cls}")
        )
    else:
        checks["proper_subring_class_one"] = _na(CONJECTURE)
    return checks


@dataclass(frozen=True)
class Inequality:
    lhs: Fraction
    rhs: Fraction
    applicable: bool
    status: str


@dataclass(frozen=True)
class BoundsReport:
    edge_count: int
    formula_value: Fraction
    formula_status: str
    lower_centralizer: Fraction
    lower_centralizer_status: str
    upper_prime: Fraction | None
    upper_prime_status: str
    lower_quadratic: Fraction | None
    lower_quadratic_status: str
    star_exclusion: Inequality


def bounds_report(pair: RingPair, analysis: Analysis | None = None) -> BoundsReport:
    a = analysis or analyse(pair)
    E = len(a.graph.edges)
    s, r = len(pair.S), pair.R.order
    zs, crs, zrs = len(pair.z_s), len(pair.c_r_s), len(pair.z_r_cap_s)
    prob = a.prob
    f = edge_count_via_formula(pair, prob)
    noncomm = not pair.s_commutative

    lower_c = Fraction(s * r, 2) - Fraction(s * s, 4) - Fraction(zs * r, 4) - Fraction(s * crs, 4) + Fraction(zs * s, 4)
    if noncomm:
        p = pair.predicates.smallest_prime_of_order
        upper_p = s * (r - Fraction(3 * s, 16) - p) - zrs * (r - p)
        lower_q = -Fraction(3 * s * s, 16) + Fraction(3 * s * r, 8)
    else:
        upper_p = lower_q = None

    applicable = noncomm and crs == 1
    lhs = 2 * r * prob.pr_SR - s * prob.pr_S
    rhs = -Fraction(2 * r, s) + Fraction(4, s) + 2 * r - s
    ineq = Inequality(lhs, rhs, applicable, (PASS if lhs != rhs else FAIL) if applicable else NA)

    return BoundsReport(
        edge_count=E,
        formula_value=f,
        formula_status=PASS if f == E else FAIL,
        lower_centralizer=lower_c,
        lower_centralizer_status=PASS if lower_c <= E else FAIL,
        upper_prime=upper_p,
        upper_prime_status=NA if upper_p is None else (PASS if E <= upper_p else FAIL),
        lower_quadratic=lower_q,
        lower_quadratic_status=NA if lower_q is None else (PASS if lower_q <= E else FAIL),
        star_exclusion=ineq,
    )


def bound_checks(pair: RingPair, bounds: BoundsReport, prob: ProbabilityReport) -> dict[str, Check]:
    noncomm = not pair.s_commutative
    checks = {
        "edge_count_formula": Check(bounds.formula_status, THEOREM, f"|E|={bounds.edge_count}, formula={bounds.formula_value}"),
        "lower_bound_centralizers": Check(bounds.lower_centralizer_status, THEOREM, f"bound {bounds.lower_centralizer} vs |E|={bounds.edge_count}"),
        "upper_bound_smallest_prime": Check(bounds.upper_prime_status, THEOREM),
        "lower_bound_three_eighths": Check(bounds.lower_quadratic_status, THEOREM),
        "probability_inequality": Check(bounds.star_exclusion.status, THEOREM),
        "relative_probability_at_most_absolute": _verdict(prob.pr_SR <= prob.pr_S, ASSUMPTION),
        "probability_at_most_five_eighths": (
            _verdict(prob.pr_S <= FIVE_EIGHTHS, ASSUMPTION, f"Pr(S)={prob.pr_S}") if noncomm else _na(ASSUMPTION)
        ),
    }
    return checks


# -- dominating sets --------------------------------------------------------

@dataclass(frozen=True)
class CriterionResult:
    criterion_holds: bool
    is_dominating: bool

    @property
    def agree(self) -> bool:
        return self.criterion_holds == self.is_dominating


def dominating_criterion(pair: RingPair, A: Iterable[int], G: NCGraph | None = None) -> CriterionResult:
    """Compare ``C_R(A) ⊆ A ∪ C_R(S)`` with direct domination of the graph."""
    A = sorted(set(A))
    verts = set(pair.vertex_set)
    if not set(A) <= verts:
        raise NotAVertexSubset(f"{sorted(set(A) - verts)} are not vertices")
    G = G or build_rncg(pair)
    allowed = set(A) | pair.c_r_s.as_set
    holds = set(centralizer(pair.R, pair.R.subset(A)).members) <= allowed
    return CriterionResult(holds, is_dominating(G, A))


def criterion_sweep(pair: RingPair, G: NCGraph, seed: int | str, exhaustive_upto: int = 12, samples: int = 1000):
    """Run the centralizer criterion over all small subsets, or a seeded random sample.

    Returns ``(tested, disagreements)`` where disagreements lists the offending subsets.
    """
    verts = list(G.vertices)
    if not verts:
        return 0, []
    if len(verts) <= exhaustive_upto:
        subsets: Iterable[Sequence[int]] = (
            c for k in range(1, min(3, len(verts)) + 1) for c in itertools.combinations(verts, k)
        )
    else:
        rnd = random.Random(f"{seed}:{pair.name}")
        subsets = [sorted(rnd.sample(verts, rnd.randint(1, len(verts)))) for _ in range(samples)]
    tested, bad = 0, []
    for A in subsets:
        tested += 1
        if not dominating_criterion(pair, A, G).agree:
            bad.append(list(A))
    return tested, bad


@dataclass(frozen=True)
class CanonicalDominating:
    s_minus_center: tuple[int, ...]
    s_minus_center_dominates: bool
    s_plus_centralizer: tuple[int, ...]
    s_plus_centralizer_dominates: bool


def canonical_dominating_sets(pair: RingPair, G: NCGraph | None = None) -> CanonicalDominating:
    G = G or build_rncg(pair)
    R = pair.R
    zs = pair.z_s.as_set
    crs = pair.c_r_s.as_set
    first = tuple(x for x in pair.S.members if x not in zs)
    sums = {R.add[s][c] for s in pair.S.members for c in crs}
    second = tuple(sorted(sums - crs))
    return CanonicalDominating(first, is_dominating(G, first), second, is_dominating(G, second))


def generating_dominating_set(pair: RingPair, L: Sequence[int], G: NCGraph | None = None) -> tuple[tuple[int, ...], bool]:
    """Build ``K`` from a generating set ``L`` of ``S`` and check that it dominates.

    Non-central generators ``s_1..s_m`` are kept; each central generator
    ``s_l`` contributes ``s_1 + s_l``.
    """
    if pair.predicates.unity is None:
        raise NoUnity(f"{pair.R.name} has no unity")
    if subring_generated(pair.R, L).members != pair.S.members:
        raise NotAGeneratingSet(f"{list(L)} does not generate {list(pair.S.members)}")
    crs = pair.c_r_s.as_set
    noncentral = [x for x in dict.fromkeys(L) if x not in crs]
    central = [x for x in dict.fromkeys(L) if x in crs]
    if not noncentral:
        raise NotAGeneratingSet("every generator centralizes S, so S is commutative")
    s1 = noncentral[0]
    K = tuple(sorted(set(noncentral) | {pair.R.add[s1][c] for c in central}))
    G = G or build_rncg(pair)
    verts = set(G.vertices)
    return K, set(K) <= verts and is_dominating(G, K)


def generating_sets_to_test(pair: RingPair) -> list[tuple[int, ...]]:
    """Greedy ascending and descending generating sets, ``S`` itself, and every 1- or 2-element one."""
    R, S = pair.R, pair.S
    out: list[tuple[int, ...]] = []

    def greedy(order):
        L: list[int] = []
        span = {0}
        for x in order:
            if x not in span:
                L.append(x)
                span = set(subring_generated(R, L).members)
        return tuple(L)

    out.append(greedy(S.members))
    out.append(greedy(reversed(S.members)))
    out.append(tuple(S.members))
    target = S.members
    for k in (1, 2):
        for L in itertools.combinations(S.members, k):
            if subring_generated(R, L).members == target:
                out.append(L)
    return list(dict.fromkeys(out))


def domination_checks(pair: RingPair, G: NCGraph, seed: int | str) -> tuple[dict[str, Check], dict]:
    checks: dict[str, Check] = {}
    info: dict = {}
    tested, bad = criterion_sweep(pair, G, seed)
    info["criterion_subsets_tested"] = tested
    info["criterion_disagreements"] = len(bad)
    checks["centralizer_domination_criterion"] = (
        _verdict(not bad, detail=f"first disagreement A={bad[0]}" if bad else "") if tested else _na()
    )
    if pair.s_commutative:
        checks["s_minus_center_dominates"] = _na()
        checks["s_plus_centralizer_dominates"] = _na()
        checks["generating_set_dominates"] = _na()
        return checks, info
    canon = canonical_dominating_sets(pair, G)
    checks["s_minus_center_dominates"] = _verdict(canon.s_minus_center_dominates)
    checks["s_plus_centralizer_dominates"] = _verdict(canon.s_plus_centralizer_dominates)
    if pair.predicates.unity is None:
        checks["generating_set_dominates"] = _na()
    else:
        failures = []
        sets = generating_sets_to_test(pair)
        for L in sets:
            K, ok = generating_dominating_set(pair, L, G)
            if not ok:
                failures.append(list(L))
        info["generating_sets_tested"] = len(sets)
        checks["generating_set_dominates"] = _verdict(not failures, detail=f"fails for L={failures[0]}" if failures else "")
    return checks, info


# -- the per-pair report ----------------------------------------------------

def _num(x: float) -> int | str:
    return "inf" if x == INF else int(x)


def pair_report(pair: RingPair, seed: int | str = 0, limits: Limits = DEFAULT_LIMITS) -> dict:
    """Full conformance record for one pair, as a JSON-ready dict (Fractions kept exact)."""
    a = analyse(pair, limits)
    G = a.graph
    checks = theorem_suite(pair, a)
    bounds = bounds_report(pair, a)
    checks.update(bound_checks(pair, bounds, a.prob))
    dom_checks, dom_info = domination_checks(pair, G, seed)
    checks.update(dom_checks)

    try:
        mds = list(minimum_dominating_set(G, limits.mds_vertices))
    except SizeLimitExceeded:
        mds = None

    cls = a.coloring.vizing_class if a.coloring is not None else INDETERMINATE
    evidence = {}
    if not pair.s_commutative and len(pair.z_s) > 1:
        evidence["nontrivial_center_diameter"] = _num(a.metrics.diameter)
        evidence["nontrivial_center_girth"] = _num(a.metrics.girth)

    return {
        "ring": pair.R.name,
        "subring": list(pair.S.members),
        "name": pair.name,
        "vertices": list(G.vertices),
        "edges": [list(e) for e in G.edges],
        "pr_sr": a.prob.pr_SR,
        "pr_s": a.prob.pr_S,
        "checks": {k: v.status for k, v in sorted(checks.items())},
        "kinds": {k: v.kind for k, v in sorted(checks.items())},
        "details": {k: v.detail for k, v in sorted(checks.items()) if v.detail},
        "bounds": {
            "edge_count": bounds.edge_count,
            "formula_value": bounds.formula_value,
            "lower_centralizer": bounds.lower_centralizer,
            "upper_prime": bounds.upper_prime,
            "lower_quadratic": bounds.lower_quadratic,
            "star_exclusion": {
                "lhs": bounds.star_exclusion.lhs,
                "rhs": bounds.star_exclusion.rhs,
                "applicable": bounds.star_exclusion.applicable,
            },
        },
        "class": cls,
        "chi_prime": a.coloring.chi_prime if a.coloring is not None else None,
        "max_degree": a.metrics.max_degree,
        "diameter": _num(a.metrics.diameter),
        "girth": _num(a.metrics.girth),
        "connected": a.metrics.connected,
        "min_dominating_set": mds,
        "sizes": {
            "R": pair.R.order,
            "S": len(pair.S),
            "C_R(S)": len(pair.c_r_s),
            "Z(R)": len(pair.z_r),
            "Z(S)": len(pair.z_s),
            "Z(R)&S": len(pair.z_r_cap_s),
        },
        "s_commutative": pair.s_commutative,
        "unity": pair.predicates.unity,
        "domination": dom_info,
        "evidence": evidence,
    }


def hard_failures(report: dict) -> list[str]:
    return [
        name for name, status in report["checks"].items()
        if status == FAIL and report["kinds"][name] in HARD_KINDS
    ]
