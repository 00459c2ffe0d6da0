from __future__ import annotations

import itertools
from fractions import Fraction

import oracles
import pytest

from ringlab.errors import NoUnity, NotAGeneratingSet, NotAVertexSubset
from ringlab.graph import INF, classify, is_dominating, metrics
from ringlab.ring import Subring, centralizer
from ringlab.rncg import (
    CONJECTURE,
    FAIL,
    NA,
    PASS,
    REPORTED,
    RingPair,
    analyse,
    bounds_report,
    build_rncg,
    canonical_dominating_sets,
    commuting_probability,
    criterion_sweep,
    degree_check,
    dominating_criterion,
    edge_count_via_formula,
    generating_dominating_set,
    hard_failures,
    pair_report,
    theorem_suite,
)

T2_ROW_EDGES = sorted([(2, 4), (2, 6), (4, 6), (1, 2), (1, 6), (2, 3), (3, 4), (4, 7), (6, 7)])


def scan_edges(pair: RingPair) -> list[tuple[int, int]]:
    return oracles.scan_edges(pair.R, pair.S.members)


def scan_probability(pair: RingPair) -> tuple[Fraction, Fraction]:
    R, S = pair.R, pair.S.members
    m = R.mul
    a = Fraction(sum(m[s][r] == m[r][s] for s in S for r in R.elements), len(S) * R.order)
    b = Fraction(sum(m[s][t] == m[t][s] for s in S for t in S), len(S) ** 2)
    return a, b


# -- graph construction -----------------------------------------------------

def test_e2_graph_is_triangle(e2_pair):
    G = build_rncg(e2_pair)
    assert G.vertices == (1, 2, 3) and G.edges == ((1, 2), (1, 3), (2, 3))


def test_e2_commutative_subring_is_edgeless(E2):
    G = build_rncg(RingPair(E2, Subring(E2, [0, 2])))
    assert G.vertices == (1, 3) and G.edges == ()


def test_t2_row_graph(t2_row_pair):
    G = build_rncg(t2_row_pair)
    assert G.vertices == (1, 2, 3, 4, 6, 7)
    assert list(G.edges) == T2_ROW_EDGES == scan_edges(t2_row_pair)


def test_graph_matches_scan_on_catalog(default_catalog):
    for e in default_catalog:
        assert list(build_rncg(e.pair).edges) == scan_edges(e.pair), e.name


def test_cached_sets_match_recomputation(default_catalog):
    for e in default_catalog:
        p = e.pair
        R, S = p.R, p.S
        assert p.c_r_s.as_set == {x for x in R.elements if all(R.mul[x][s] == R.mul[s][x] for s in S.members)}
        assert p.z_r.as_set == {x for x in R.elements if all(R.mul[x][y] == R.mul[y][x] for y in R.elements)}
        assert p.z_s.as_set == S.as_set & p.c_r_s.as_set
        assert p.z_r_cap_s.as_set == p.z_r.as_set & S.as_set


# -- probabilities and the edge formula --------------------------------------

def test_probability_examples(e2_pair, t2_row_pair):
    assert commuting_probability(e2_pair).pr_SR == Fraction(5, 8)
    pr = commuting_probability(t2_row_pair)
    assert (pr.pr_SR, pr.pr_S, pr.commuting_pair_count) == (Fraction(5, 8), Fraction(5, 8), 20)


def test_central_subring_has_probability_one(T2):
    p = RingPair(T2, Subring(T2, [0, 5]))
    assert commuting_probability(p).pr_SR == 1


def test_probabilities_match_scan(default_catalog):
    for e in default_catalog:
        pr = commuting_probability(e.pair)
        assert (pr.pr_SR, pr.pr_S) == scan_probability(e.pair)
        assert 0 < pr.pr_SR <= 1 and pr.pr_SR == Fraction(pr.commuting_pair_count, len(e.pair.S) * e.pair.R.order)


def test_formula_examples(e2_pair, t2_row_pair):
    assert edge_count_via_formula(e2_pair) == 3
    assert edge_count_via_formula(t2_row_pair) == 9


def test_formula_counts_noncommuting_pairs_touching_s(default_catalog):
    # the closed form counts unordered non-commuting pairs with an element of S,
    # whether or not both elements are vertices
    for e in default_catalog:
        R, S = e.pair.R, set(e.pair.S.members)
        m = R.mul
        n = sum(
            1 for a, b in itertools.combinations(R.elements, 2)
            if (a in S or b in S) and m[a][b] != m[b][a]
        )
        assert edge_count_via_formula(e.pair) == n, e.name


def test_formula_overcounts_when_center_of_s_escapes(E2):
    # S = {0,1} is commutative but 1 does not commute with 2 or 3; those pairs are
    # counted by the closed form although 1 centralizes S and is not a vertex
    p = RingPair(E2, Subring(E2, [0, 1]))
    assert build_rncg(p).edges == ()
    assert edge_count_via_formula(p) == 2
    assert bounds_report(p).formula_status == FAIL


def test_formula_is_exact_when_s_lies_in_center(default_catalog):
    for e in default_catalog:
        if e.pair.S.as_set <= e.pair.z_r.as_set:
            assert edge_count_via_formula(e.pair) == 0 == len(build_rncg(e.pair).edges)


# -- degrees ----------------------------------------------------------------

def test_degree_examples(e2_pair, t2_row_pair):
    rows = {r.vertex: r for r in degree_check(e2_pair)}
    assert (rows[2].degree, rows[2].formula) == (2, 2)
    rows = {r.vertex: r for r in degree_check(t2_row_pair)}
    assert (rows[4].in_s, rows[4].degree, rows[4].formula) == (True, 4, 4)
    assert (rows[1].in_s, rows[1].degree, rows[1].formula) == (False, 2, 2)


def test_degree_formula_in_s_everywhere(default_catalog):
    for e in default_catalog:
        assert all(r.match for r in degree_check(e.pair) if r.in_s), e.name


# -- theorem suite ----------------------------------------------------------

def test_suite_on_e2(e2_pair):
    c = theorem_suite(e2_pair)
    assert c["not_star"].status == PASS
    assert c["not_squarefree_odd_regular"].status == PASS  # 2-regular
    assert c["diameter_two"].status == PASS and "diameter 1" in c["diameter_two"].detail
    assert c["full_ring_class_two"].status == PASS
    assert c["not_complete"].status == NA  # no unity
    assert c["not_bipartite"].status == NA  # S = R


def test_suite_on_t2_row(t2_row_pair):
    c = theorem_suite(t2_row_pair)
    for name in ("not_star", "not_bipartite", "not_complete", "connected", "diameter_two", "girth_three", "no_isolated_vertex"):
        assert c[name].status == PASS, name
    assert c["proper_subring_class_one"].kind == CONJECTURE
    assert c["degree_formula_outside_s"].kind == REPORTED


def test_suite_on_commutative_subring(E2):
    c = theorem_suite(RingPair(E2, Subring(E2, [0, 2])))
    assert c["edgeless_iff_commutative"].status == PASS
    assert c["not_star"].status == NA and c["connected"].status == NA


def test_structural_checks_against_direct_invariants(default_catalog):
    for e in default_catalog:
        p = e.pair
        G = build_rncg(p)
        m, shape = metrics(G), classify(G)
        c = theorem_suite(p)
        if not p.s_commutative:
            assert (c["not_star"].status == PASS) == (not shape.star)
            assert (c["connected"].status == PASS) == m.connected
        if not p.s_commutative and len(p.z_s) == 1 and not p.S.is_whole:
            assert (c["girth_three"].status == PASS) == (m.girth == 3)
            assert (c["diameter_two"].status == PASS) == (m.diameter == 2)


# -- bounds -----------------------------------------------------------------

def test_bounds_on_e2(e2_pair):
    b = bounds_report(e2_pair)
    assert (b.edge_count, b.formula_value) == (3, 3)
    assert b.lower_centralizer == 3 and b.upper_prime == 3 and b.lower_quadratic == 3
    ineq = b.star_exclusion
    assert ineq.applicable and (ineq.lhs, ineq.rhs) == (Fraction(5, 2), 3) and ineq.status == PASS


def test_bounds_on_t2_row(t2_row_pair):
    b = bounds_report(t2_row_pair)
    assert (b.lower_centralizer, b.upper_prime, b.lower_quadratic) == (9, 15, 9)
    assert all(s == PASS for s in (b.formula_status, b.lower_centralizer_status, b.upper_prime_status, b.lower_quadratic_status))
    assert not b.star_exclusion.applicable and b.star_exclusion.status == NA


def test_bounds_not_applicable_for_commutative(E2):
    b = bounds_report(RingPair(E2, Subring(E2, [0, 2])))
    assert b.upper_prime is None and b.upper_prime_status == NA and b.lower_quadratic_status == NA


# -- domination -------------------------------------------------------------

def test_criterion_examples(t2_row_pair):
    r = dominating_criterion(t2_row_pair, [2])
    assert (r.criterion_holds, r.is_dominating) == (False, False)
    assert centralizer(t2_row_pair.R, t2_row_pair.R.subset([2])).members == (0, 2, 5, 7)
    r = dominating_criterion(t2_row_pair, [2, 6])
    assert r.criterion_holds and r.is_dominating
    r = dominating_criterion(t2_row_pair, t2_row_pair.vertex_set)
    assert r.agree


def test_criterion_rejects_non_vertices(t2_row_pair):
    with pytest.raises(NotAVertexSubset):
        dominating_criterion(t2_row_pair, [5])


def test_criterion_counterexample_outside_s(t2_row_pair):
    # A = {1,2}: C_R(A) = {0,5} sits inside A ∪ C_R(S), yet vertex 7 has
    # neighbours 4 and 6 only, so A does not dominate; the criterion ignores
    # that an edge needs an endpoint in S
    R = t2_row_pair.R
    G = build_rncg(t2_row_pair)
    assert set(centralizer(R, R.subset([1, 2])).members) <= {1, 2, 0, 5}
    assert G.adjacency[7] == {4, 6}
    assert not is_dominating(G, [1, 2])
    r = dominating_criterion(t2_row_pair, [1, 2])
    assert r.criterion_holds and not r.is_dominating and not r.agree


def test_criterion_only_if_direction_holds(default_catalog):
    # domination always implies the centralizer containment
    for e in default_catalog:
        G = build_rncg(e.pair)
        for k in range(1, min(3, G.order) + 1):
            for A in itertools.combinations(G.vertices, k):
                r = dominating_criterion(e.pair, A, G)
                if r.is_dominating:
                    assert r.criterion_holds, (e.name, A)


def test_criterion_sweep_is_seeded(default_catalog):
    big = [e.pair for e in default_catalog if len(e.pair.vertex_set) > 12]
    assert big
    p = big[0]
    G = build_rncg(p)
    a = criterion_sweep(p, G, seed=4)
    assert a == criterion_sweep(p, G, seed=4) and a[0] == 1000


def test_canonical_sets(e2_pair, t2_row_pair):
    c = canonical_dominating_sets(e2_pair)
    assert c.s_minus_center == (1, 2, 3) and c.s_minus_center_dominates
    c = canonical_dominating_sets(t2_row_pair)
    assert c.s_minus_center == (2, 4, 6) and c.s_minus_center_dominates
    assert c.s_plus_centralizer == (1, 2, 3, 4, 6, 7) and c.s_plus_centralizer_dominates


def test_generating_set_examples(t2_row_pair, e2_pair):
    assert generating_dominating_set(t2_row_pair, [2, 6]) == ((2, 6), True)
    assert generating_dominating_set(t2_row_pair, [2, 4, 6]) == ((2, 4, 6), True)
    with pytest.raises(NotAGeneratingSet):
        generating_dominating_set(t2_row_pair, [2])
    with pytest.raises(NoUnity):
        generating_dominating_set(e2_pair, [1, 2])


# -- reports ----------------------------------------------------------------

def test_pair_report_shape(t2_row_pair):
    r = pair_report(t2_row_pair, seed=0)
    for key in ("ring", "subring", "vertices", "edges", "pr_sr", "pr_s", "checks", "bounds", "class"):
        assert key in r
    assert r["pr_sr"] == Fraction(5, 8) and len(r["edges"]) == 9
    assert set(r["checks"].values()) <= {PASS, FAIL, NA, "indeterminate"}
    assert r["diameter"] == 2 and r["girth"] == 3
    # the only failing claim here is the criterion counterexample documented above
    assert hard_failures(r) == ["centralizer_domination_criterion"]
    assert r["domination"]["criterion_disagreements"] > 0


def test_conjecture_never_counts_as_hard():
    r = {"checks": {"a": FAIL, "b": FAIL, "c": FAIL}, "kinds": {"a": CONJECTURE, "b": REPORTED, "c": "theorem"}}
    assert hard_failures(r) == ["c"]


def test_full_matrix_ring_needs_higher_edge_cap(default_catalog):
    from dataclasses import replace

    from ringlab.limits import DEFAULT_LIMITS

    p = default_catalog.find("mat2:z2|R").pair
    a = analyse(p)
    assert a.coloring is None and "64 edges" in a.coloring_note
    a = analyse(p, replace(DEFAULT_LIMITS, edge_color_edges=200))
    assert a.coloring.vizing_class == 1
