"""Acceptance suite.

Each criterion prints one PASS/FAIL line (visible with ``pytest -s``):

1. exhaustive decision-vs-oracle equivalence (n <= 4 complete, n = 5 connected)
2. randomized equivalence, 1000 seeded graphs with n in [2, 6]
3. constructor soundness on 200 seeded dominant-pair double-stars (n <= 12)
4. the grand-coalition row of each constructed scheme lies in the core
5. scanner soundness: any reported violation or pattern implies infeasibility
6. the decision scales: 100,000-leaf double-star answered in under a second
7. boundary exactness at the triangle equality w23 = w12 + w13
8. determinism: repeating runs 1-3 yields byte-identical JSON
"""

import json
import random
import time
from fractions import Fraction

import pytest

from pmas.characterization import (
    decide_population_monotonic,
    scan_forbidden_subgraphs,
    scan_weight_lemmas,
)
from pmas.graph import WeightedGraph, parse_graph, serialize_graph
from pmas.oracle import (
    equivalence_harness,
    exhaustive_instances,
    pmas_feasibility,
    random_instances,
)
from pmas.schemes import construct_scheme, is_core_allocation, scheme_to_json, verify_scheme

from .reference import random_dominant_double_star

SEED = 577215664
EXHAUSTIVE_INSTANCES = 56008  # 760 for n <= 4, plus 55248 connected on 5 vertices
RANDOM_TRIALS = 1000
DOUBLE_STARS = 200

EXHAUSTIVE_BUDGET = 900.0  # seconds
RANDOM_BUDGET = 600.0
CONSTRUCTOR_BUDGET = 300.0


def announce(num: int, name: str, ok: bool, detail: str) -> None:
    print(f"[acceptance {num}] {name}: {'PASS' if ok else 'FAIL'} ({detail})")


@pytest.fixture(scope="module")
def exhaustive_run():
    start = time.monotonic()
    report = equivalence_harness(max_n=5, trials=0, seed=SEED)
    elapsed = time.monotonic() - start
    return report, elapsed


@pytest.fixture(scope="module")
def random_run():
    start = time.monotonic()
    report = equivalence_harness(max_n=6, trials=RANDOM_TRIALS, seed=SEED)
    elapsed = time.monotonic() - start
    return report, elapsed


def build_double_star_schemes() -> tuple[list, str]:
    rng = random.Random(SEED)
    bundle = []
    documents = []
    for _ in range(DOUBLE_STARS):
        g = random_dominant_double_star(rng, rng.randrange(2, 13))
        scheme = construct_scheme(g, mode="materialized")
        bundle.append((g, scheme))
        documents.append(
            {"graph": serialize_graph(g), "scheme": scheme_to_json(scheme)}
        )
    return bundle, json.dumps(documents, sort_keys=True, indent=2)


@pytest.fixture(scope="module")
def constructor_run():
    start = time.monotonic()
    bundle, document = build_double_star_schemes()
    reports = [verify_scheme(g, scheme) for g, scheme in bundle]
    elapsed = time.monotonic() - start
    return bundle, document, reports, elapsed


def test_criterion_1_exhaustive_equivalence(exhaustive_run):
    report, elapsed = exhaustive_run
    instances = report["exhaustive"]["instances"]
    disagreements = report["exhaustive"]["disagreements"]
    ok = (
        instances == EXHAUSTIVE_INSTANCES
        and disagreements == 0
        and elapsed < EXHAUSTIVE_BUDGET
    )
    announce(
        1,
        "theorem equivalence, exhaustive",
        ok,
        f"{instances} instances, {disagreements} disagreements, {elapsed:.1f}s",
    )
    assert instances == EXHAUSTIVE_INSTANCES
    assert disagreements == 0
    assert report["disagreement_dumps"] == []
    assert elapsed < EXHAUSTIVE_BUDGET


def test_criterion_2_randomized_equivalence(random_run):
    report, elapsed = random_run
    trials = report["random"]["trials"]
    disagreements = report["random"]["disagreements"] + report["exhaustive"]["disagreements"]
    ok = trials == RANDOM_TRIALS and disagreements == 0 and elapsed < RANDOM_BUDGET
    announce(
        2,
        "theorem equivalence, randomized",
        ok,
        f"{trials} trials, {disagreements} disagreements, {elapsed:.1f}s",
    )
    assert trials == RANDOM_TRIALS
    assert disagreements == 0
    assert elapsed < RANDOM_BUDGET


def test_criterion_3_constructor_soundness(constructor_run):
    bundle, _document, reports, elapsed = constructor_run
    failures = sum(0 if report.ok else 1 for report in reports)
    ok = len(bundle) == DOUBLE_STARS and failures == 0 and elapsed < CONSTRUCTOR_BUDGET
    announce(
        3,
        "constructor soundness",
        ok,
        f"{len(bundle)} schemes, {failures} verification failures, {elapsed:.1f}s",
    )
    assert len(bundle) == DOUBLE_STARS
    assert failures == 0
    assert elapsed < CONSTRUCTOR_BUDGET


def test_criterion_4_constructed_grand_rows_are_core(constructor_run):
    bundle, _document, _reports, _elapsed = constructor_run
    failures = sum(
        0 if is_core_allocation(g, scheme.allocation(g.vertex_set())) else 1
        for g, scheme in bundle
    )
    announce(4, "schemes imply core", failures == 0, f"{len(bundle)} grand rows, {failures} failures")
    assert failures == 0


def test_criterion_5_scanner_soundness():
    flagged = exceptions = checked = 0
    streams = (exhaustive_instances(5), random_instances(6, RANDOM_TRIALS, SEED))
    for stream in streams:
        for g in stream:
            checked += 1
            if not scan_weight_lemmas(g) and not scan_forbidden_subgraphs(g, first_only=True):
                continue
            flagged += 1
            if pmas_feasibility(g)[0]:
                exceptions += 1
    ok = exceptions == 0 and flagged > 0
    announce(
        5,
        "scanner soundness",
        ok,
        f"{checked} instances, {flagged} flagged, {exceptions} feasible exceptions",
    )
    assert exceptions == 0
    assert flagged > 0


def test_criterion_6_decision_is_fast_at_scale():
    leaves = 100_000
    edges = [("u", "v", 3)]
    edges += [("u", f"a{i}", 1) for i in range(leaves // 2)]
    edges += [("v", f"b{i}", 1) for i in range(leaves // 2)]
    star = WeightedGraph.from_edges(edges)

    start = time.monotonic()
    decision = decide_population_monotonic(star)
    star_elapsed = time.monotonic() - start

    broken = WeightedGraph.from_edges(edges + [("a0", "b0", 1)])
    start = time.monotonic()
    broken_decision = decide_population_monotonic(broken)
    broken_elapsed = time.monotonic() - start

    ok = (
        decision.population_monotonic
        and not broken_decision.population_monotonic
        and star_elapsed < 1.0
        and broken_elapsed < 1.0
    )
    announce(
        6,
        "corollary efficiency",
        ok,
        f"{leaves}-leaf star {star_elapsed * 1000:.0f}ms PM, "
        f"broken {broken_elapsed * 1000:.0f}ms not PM",
    )
    assert decision.population_monotonic
    assert star_elapsed < 1.0
    assert not broken_decision.population_monotonic
    assert broken_elapsed < 1.0


def test_criterion_7_boundary_exactness():
    tight = parse_graph("1 2 1\n1 3 1\n2 3 2")
    eps_short = parse_graph("1 2 1\n1 3 1\n2 3 1999999/1000000")

    tight_pm = decide_population_monotonic(tight).population_monotonic
    short_pm = decide_population_monotonic(eps_short).population_monotonic
    tight_oracle = pmas_feasibility(tight)[0]
    short_oracle = pmas_feasibility(eps_short)[0]

    ok = tight_pm and tight_oracle and not short_pm and not short_oracle
    announce(
        7,
        "boundary exactness",
        ok,
        f"w23=2 -> PM={tight_pm}/oracle={tight_oracle}, "
        f"w23=2-1e-6 -> PM={short_pm}/oracle={short_oracle}",
    )
    assert tight_pm and tight_oracle
    assert not short_pm and not short_oracle


def test_criterion_8_determinism(exhaustive_run, random_run, constructor_run):
    first_exhaustive = json.dumps(exhaustive_run[0], sort_keys=True, indent=2)
    first_random = json.dumps(random_run[0], sort_keys=True, indent=2)
    _bundle, first_constructor, _reports, _elapsed = constructor_run

    second_exhaustive = json.dumps(
        equivalence_harness(max_n=5, trials=0, seed=SEED), sort_keys=True, indent=2
    )
    second_random = json.dumps(
        equivalence_harness(max_n=6, trials=RANDOM_TRIALS, seed=SEED),
        sort_keys=True,
        indent=2,
    )
    _bundle2, second_constructor = build_double_star_schemes()

    same = (
        first_exhaustive == second_exhaustive
        and first_random == second_random
        and first_constructor == second_constructor
    )
    announce(
        8,
        "determinism",
        same,
        f"exhaustive {len(first_exhaustive)}B, random {len(first_random)}B, "
        f"constructor {len(first_constructor)}B reports byte-identical",
    )
    assert first_exhaustive == second_exhaustive
    assert first_random == second_random
    assert first_constructor == second_constructor
