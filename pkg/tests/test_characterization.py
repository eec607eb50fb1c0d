"""Scanners and the double-star decision, cross-checked independently."""

import random
from fractions import Fraction

import pytest

from pmas.certificates import (
    ForbiddenSubgraph,
    Lemma,
    LemmaViolation,
    Pattern,
    StructuralFailure,
)
from pmas.characterization import (
    candidate_center_pairs,
    decide_population_monotonic,
    scan_forbidden_subgraphs,
    scan_weight_lemmas,
)
from pmas.errors import CapacityError, DomainError
from pmas.graph import WeightedGraph, parse_graph

from .reference import (
    check_forbidden,
    check_lemma_violation,
    check_witness,
    induced_occurrences,
    random_graph,
)

UNIT_C4 = "1 2 1\n2 3 1\n3 4 1\n4 1 1"


def relabeled(g: WeightedGraph, weights) -> WeightedGraph:
    return WeightedGraph.from_edges(
        [(g.label_of(i), g.label_of(j), w) for (i, j, _), w in zip(g.edges(), weights)],
        vertices=g.labels,
    )


# -- weight lemmas ----------------------------------------------------------

def test_triangle_boundary_satisfies_k3():
    g = parse_graph("1 2 1\n1 3 1\n2 3 2")
    assert scan_weight_lemmas(g) == []


def test_flat_triangle_violates_k3():
    g = parse_graph("1 2 1\n1 3 1\n2 3 1")
    (violation,) = scan_weight_lemmas(g)
    assert violation.lemma is Lemma.K3
    assert (violation.lhs, violation.rhs) == (1, 2)
    assert check_lemma_violation(g, violation)


def test_unit_p4_violation():
    g = parse_graph("1 2 1\n2 3 1\n3 4 1")
    (violation,) = scan_weight_lemmas(g)
    assert violation.lemma is Lemma.P4
    assert (violation.lhs, violation.rhs) == (1, 2)
    assert check_lemma_violation(g, violation)


def test_paw_violation_example():
    g = parse_graph("1 2 4\n2 3 5\n2 4 2\n3 4 2")
    violations = [v for v in scan_weight_lemmas(g) if v.lemma is Lemma.PAW]
    assert len(violations) == 1
    violation = violations[0]
    assert (violation.lhs, violation.rhs) == (5, 6)
    assert check_lemma_violation(g, violation)


def test_diamond_violations_both_sides():
    # shared edge 2-3 must outweigh both attached pairs; here it fails twice
    g = parse_graph("1 2 2\n1 3 2\n2 3 3\n2 4 2\n3 4 2")
    violations = [v for v in scan_weight_lemmas(g) if v.lemma is Lemma.DIAMOND]
    assert len(violations) == 2
    assert all(check_lemma_violation(g, v) for v in violations)


def test_dominant_double_star_is_clean():
    g = parse_graph("u v 10\nu a 4\nv b 5\nu c 1\nc v 2")
    assert scan_weight_lemmas(g) == []
    assert scan_forbidden_subgraphs(g) == []


def test_weight_scan_cap():
    g = WeightedGraph.from_edges([], vertices=[str(i) for i in range(501)])
    with pytest.raises(CapacityError):
        scan_weight_lemmas(g)


def test_lemma_scan_findings_all_reverify():
    rng = random.Random(31)
    for _ in range(40):
        g = random_graph(rng, rng.randrange(4, 8))
        for violation in scan_weight_lemmas(g):
            assert check_lemma_violation(g, violation)


# -- forbidden subgraphs ----------------------------------------------------

def test_c4_detected_regardless_of_weights():
    g = parse_graph(UNIT_C4)
    hits = scan_forbidden_subgraphs(g)
    assert hits == [ForbiddenSubgraph(Pattern.C4, frozenset({0, 1, 2, 3}))]


def test_k4_has_no_induced_diamond_or_c4():
    g = parse_graph("1 2 1\n1 3 1\n1 4 1\n2 3 1\n2 4 1\n3 4 1")
    hits = scan_forbidden_subgraphs(g)
    assert [h.kind for h in hits] == [Pattern.K4]
    # the diamond weight-lemma scanner must not fire inside a K4 either
    assert all(v.lemma is Lemma.K3 for v in scan_weight_lemmas(g))


def test_star_contains_no_pattern():
    star = WeightedGraph.from_edges([("hub", f"l{i}", 1) for i in range(6)])
    assert scan_forbidden_subgraphs(star) == []


def test_pattern_scan_cap():
    g = WeightedGraph.from_edges([], vertices=[str(i) for i in range(201)])
    with pytest.raises(CapacityError):
        scan_forbidden_subgraphs(g)


@pytest.mark.parametrize(
    "kind,text",
    [
        (Pattern.P5, "1 2 1\n2 3 1\n3 4 1\n4 5 1"),
        (Pattern.C5, "1 2 1\n2 3 1\n3 4 1\n4 5 1\n5 1 1"),
        (Pattern.CO_BANNER, "1 2 1\n2 3 1\n3 4 1\n3 5 1\n4 5 1"),
        (Pattern.BUTTERFLY, "1 2 1\n1 3 1\n2 3 1\n3 4 1\n3 5 1\n4 5 1"),
    ],
)
def test_five_vertex_patterns_detected(kind, text):
    g = parse_graph(text)
    hits = scan_forbidden_subgraphs(g)
    assert [h.kind for h in hits] == [kind]
    assert hits[0].vertices == frozenset(range(5))


def test_p5_with_chord_is_not_reported():
    g = parse_graph("1 2 1\n2 3 1\n3 4 1\n4 5 1\n1 3 1")
    assert not any(
        h.kind is Pattern.P5 and h.vertices == frozenset(range(5))
        for h in scan_forbidden_subgraphs(g)
    )


def test_scan_agrees_with_brute_force_isomorphism():
    rng = random.Random(37)
    for _ in range(25):
        g = random_graph(rng, rng.randrange(4, 8))
        found = scan_forbidden_subgraphs(g)
        by_kind = {kind: set() for kind in Pattern}
        for hit in found:
            by_kind[hit.kind].add(hit.vertices)
            assert check_forbidden(g, hit)
        for kind in Pattern:
            assert by_kind[kind] == induced_occurrences(g, kind)


def test_first_only_reports_one_per_kind():
    g = parse_graph("1 2 1\n2 3 1\n3 4 1\n4 1 1\n5 6 1\n6 7 1\n7 8 1\n8 5 1")
    all_hits = scan_forbidden_subgraphs(g)
    assert len(all_hits) == 2
    first = scan_forbidden_subgraphs(g, first_only=True)
    assert len(first) == 1 and first[0] == all_hits[0]


# -- candidate pairs and dominance -------------------------------------------

def test_candidate_pairs_forced_by_two_high_degree_vertices():
    g = parse_graph(
        "u v 9\nu a 1\nu b 1\nu c 1\nv d 1\nv e 1\nv f 1"
    )
    pairs = candidate_center_pairs(g, g.vertex_set())
    assert pairs == [(0, 1)]


def test_candidate_pairs_star_pairs_hub_with_each_leaf():
    g = parse_graph("h a 1\nh b 1\nh c 1")
    pairs = candidate_center_pairs(g, g.vertex_set())
    assert pairs == [(0, 1), (0, 2), (0, 3)]


def test_candidate_pairs_p5_all_edges():
    g = parse_graph("1 2 1\n2 3 1\n3 4 1\n4 5 1")
    pairs = candidate_center_pairs(g, g.vertex_set())
    assert pairs == [(0, 1), (1, 2), (2, 3), (3, 4)]
    decision = decide_population_monotonic(g)
    assert not decision.population_monotonic


def test_candidate_pairs_single_vertex_and_errors():
    g = parse_graph("1 2 1\n3")
    assert candidate_center_pairs(g, frozenset({2})) == []
    with pytest.raises(DomainError):
        candidate_center_pairs(g, frozenset({0, 2}))


def test_is_dominant_pair_examples():
    from pmas.characterization import is_dominant_pair

    g = parse_graph("u v 10\nu a 4\nv b 5")
    assert is_dominant_pair(g, 0, 1) == (True, 1)
    g = parse_graph("u v 8\nu a 4\nv b 5")
    assert is_dominant_pair(g, 0, 1) == (False, -1)
    g = parse_graph("u v 5\nu a 3")
    assert is_dominant_pair(g, 0, 1) == (True, 2)
    with pytest.raises(DomainError):
        is_dominant_pair(g, 1, 2)


# -- the decision -----------------------------------------------------------

def test_decide_p4_131_with_witness():
    g = parse_graph("1 2 1\n2 3 3\n3 4 1")
    decision = decide_population_monotonic(g)
    assert decision.population_monotonic
    (witness,) = decision.witnesses
    assert witness.centers == (1, 2)
    assert (witness.sigma_u, witness.sigma_v, witness.margin) == (1, 1, 1)
    assert check_witness(g, witness)


def test_decide_unit_p4_returns_lemma_certificate():
    g = parse_graph("1 2 1\n2 3 1\n3 4 1")
    decision = decide_population_monotonic(g)
    assert not decision.population_monotonic
    assert isinstance(decision.certificate, LemmaViolation)
    assert decision.certificate.lemma is Lemma.P4
    assert check_lemma_violation(g, decision.certificate)


def test_decide_unit_c4_returns_forbidden_certificate():
    g = parse_graph(UNIT_C4)
    decision = decide_population_monotonic(g)
    assert not decision.population_monotonic
    assert isinstance(decision.certificate, ForbiddenSubgraph)
    assert decision.certificate.kind is Pattern.C4
    assert check_forbidden(g, decision.certificate)


def test_decide_single_edge_and_isolated_vertex():
    g = parse_graph("1 2 7\nx")
    decision = decide_population_monotonic(g)
    assert decision.population_monotonic
    assert [w.centers for w in decision.witnesses] == [(0, 1), (2,)]
    assert all(check_witness(g, w) for w in decision.witnesses)


def test_decide_prefers_largest_margin_pair():
    # a star: the heaviest edge endpoint must be chosen as the second center
    g = parse_graph("h a 5\nh b 3\nh c 1")
    decision = decide_population_monotonic(g)
    (witness,) = decision.witnesses
    assert witness.centers == (0, 1)
    assert witness.margin == 2


def test_decide_scale_invariance():
    rng = random.Random(41)
    c = Fraction(5, 7)
    for _ in range(40):
        g = random_graph(rng, rng.randrange(2, 8))
        scaled = WeightedGraph.from_edges(
            [(g.label_of(i), g.label_of(j), w * c) for i, j, w in g.edges()],
            vertices=g.labels,
        )
        d1 = decide_population_monotonic(g)
        d2 = decide_population_monotonic(scaled)
        assert d1.population_monotonic == d2.population_monotonic
        if d1.population_monotonic:
            assert [w.centers for w in d1.witnesses] == [w.centers for w in d2.witnesses]
            assert [w.margin * c for w in d1.witnesses] == [w.margin for w in d2.witnesses]
        else:
            assert type(d1.certificate) is type(d2.certificate)
            if isinstance(d1.certificate, LemmaViolation):
                assert d1.certificate.vertices == d2.certificate.vertices
            elif isinstance(d1.certificate, ForbiddenSubgraph):
                assert d1.certificate.vertices == d2.certificate.vertices


def test_forbidden_patterns_break_pm_for_any_weights():
    rng = random.Random(43)
    base = {
        Pattern.C4: UNIT_C4,
        Pattern.K4: "1 2 1\n1 3 1\n1 4 1\n2 3 1\n2 4 1\n3 4 1",
        Pattern.P5: "1 2 1\n2 3 1\n3 4 1\n4 5 1",
        Pattern.C5: "1 2 1\n2 3 1\n3 4 1\n4 5 1\n5 1 1",
        Pattern.CO_BANNER: "1 2 1\n2 3 1\n3 4 1\n3 5 1\n4 5 1",
        Pattern.BUTTERFLY: "1 2 1\n1 3 1\n2 3 1\n3 4 1\n3 5 1\n4 5 1",
    }
    for text in base.values():
        g = parse_graph(text)
        weights = [
            Fraction(rng.randrange(1, 20), rng.randrange(1, 5))
            for _ in range(g.edge_count())
        ]
        for _ in range(6):
            rng.shuffle(weights)
            shuffled = relabeled(g, weights)
            assert not decide_population_monotonic(shuffled).population_monotonic


def test_structural_failure_when_scan_caps_exceeded():
    # a too-large component cannot be enriched, the structural record stands;
    # the leaf-leaf edge makes l0 a center candidate, so this is a double-star
    # that merely lacks a dominant pair
    edges = [("u", f"l{i}", 1) for i in range(600)]
    edges.append(("l0", "l1", 1))
    g = WeightedGraph.from_edges(edges)
    decision = decide_population_monotonic(g)
    assert not decision.population_monotonic
    assert isinstance(decision.certificate, StructuralFailure)
    assert decision.certificate.reason == "no_dominant_pair"


def test_structural_failure_not_double_star_above_caps():
    # two productive centers plus one leaf-leaf edge: no pair covers all edges
    edges = [("u", "v", 10)]
    edges += [("u", f"a{i}", 1) for i in range(300)]
    edges += [("v", f"b{i}", 1) for i in range(300)]
    edges.append(("a0", "b0", 1))
    g = WeightedGraph.from_edges(edges)
    decision = decide_population_monotonic(g)
    assert not decision.population_monotonic
    assert isinstance(decision.certificate, StructuralFailure)
    assert decision.certificate.reason == "not_double_star"


def test_no_dominant_pair_reason():
    # triangle that narrowly misses the dominance boundary
    g = parse_graph("1 2 1\n1 3 1\n2 3 1999999/1000000")
    decision = decide_population_monotonic(g)
    assert not decision.population_monotonic
    assert isinstance(decision.certificate, LemmaViolation)
    assert decision.certificate.lemma is Lemma.K3


def test_decided_witnesses_always_reverify():
    rng = random.Random(47)
    count_pm = 0
    for _ in range(200):
        g = random_graph(rng, rng.randrange(1, 7), p=0.4)
        decision = decide_population_monotonic(g)
        if decision.population_monotonic:
            count_pm += 1
            assert all(check_witness(g, w) for w in decision.witnesses)
        else:
            cert = decision.certificate
            if isinstance(cert, LemmaViolation):
                assert check_lemma_violation(g, cert)
            elif isinstance(cert, ForbiddenSubgraph):
                assert check_forbidden(g, cert)
    assert count_pm > 10  # the sample actually exercises both branches
