"""Independent ground truth for PMAS existence, plus instance generators.

A scheme exists iff a finite linear system is feasible: one variable per
(coalition, member) pair, an exact efficiency equality per coalition, and a
monotonicity inequality per cover pair (general inclusions follow by
chaining). That system is decided exactly, with no reference to the
double-star recognizer, so the two routes can cross-validate each other.

Two reductions keep the exact solve tractable without changing the verdict:

* component decomposition: worth is additive across connected components
  (matchings cannot cross components), so a scheme for the whole game is
  exactly a concatenation of per-component schemes;
* singleton elimination: every singleton coalition is worth 0, so its
  variable is fixed at 0 and the cover inequalities out of singletons
  reduce to nonnegativity of the pair-coalition variables. Chaining covers
  from singletons upward makes every variable nonnegative in any feasible
  scheme, so solving with nonnegative variables is equivalent to the
  free-signed formulation.

Per-component verdicts and solutions are cached under a canonical relabeling
(feasibility is invariant under vertex relabeling; solutions transport along
the permutation), which makes exhaustive sweeps over thousands of mostly
isomorphic instances cheap.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Iterator

import numpy as np

from .characterization import decide_population_monotonic
from .errors import CapacityError, DomainError
from .exactlp import solve_feasibility
from .graph import (
    Coalition,
    WeightedGraph,
    connected_components,
    induced_subgraph,
    serialize_graph,
)
from .matching import gamma_table
from .rational import as_rational
from .schemes import Allocation, AllocationScheme

ORACLE_CAP = 7

#: weight pool of the exhaustive sweep, in enumeration order
EXHAUSTIVE_POOL = (Fraction(1), Fraction(2))
#: weight pool of the randomized sweep
RANDOM_POOL = (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))

ZERO = Fraction(0)

_ABSENT = Fraction(-1)  # sorts below every positive weight in canonical signatures


@dataclass
class FeasibilitySystem:
    """The PMAS existence system of a game, in its literal free-signed form.

    ``variables`` lists (coalition, member) pairs; ``equalities`` pins each
    coalition's payoff sum to its worth; ``inequalities`` holds the cover
    triples (S, j, i) meaning x[S, i] <= x[S + j, i]. Variables carry no
    sign constraint of their own.
    """

    graph: WeightedGraph
    variables: list[tuple[Coalition, int]]
    equalities: list[tuple[Coalition, Fraction]]
    inequalities: list[tuple[Coalition, int, int]]


def build_feasibility_system(g: WeightedGraph) -> FeasibilitySystem:
    """Materialize the full system (all coalitions, singletons included)."""
    if g.n > ORACLE_CAP:
        raise CapacityError(f"the oracle is capped at {ORACLE_CAP} vertices, got {g.n}")
    table = gamma_table(g)
    n = g.n
    coalitions = [
        frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)
    ]
    variables = [
        (coalitions[mask], i)
        for mask in range(1, 1 << n)
        for i in range(n)
        if mask >> i & 1
    ]
    equalities = [
        (coalitions[mask], table.mask_value(mask)) for mask in range(1, 1 << n)
    ]
    inequalities = [
        (coalitions[mask], j, i)
        for mask in range(1, 1 << n)
        for j in range(n)
        if not mask >> j & 1
        for i in range(n)
        if mask >> i & 1
    ]
    return FeasibilitySystem(g, variables, equalities, inequalities)


# ---------------------------------------------------------------------------
# the feasibility oracle
# ---------------------------------------------------------------------------

_component_cache: dict[tuple, dict[tuple[int, int], Fraction] | None] = {}


def clear_oracle_cache() -> None:
    _component_cache.clear()


def pmas_feasibility(g: WeightedGraph) -> tuple[bool, AllocationScheme | None]:
    """Exact verdict on PMAS existence; the scheme accompanies a feasible one.

    Decided component by component (see the module docstring for why that
    is equivalent); any returned scheme satisfies efficiency and cover
    monotonicity exactly and passes :func:`pmas.schemes.verify_scheme`.
    """
    if g.n > ORACLE_CAP:
        raise CapacityError(f"the oracle is capped at {ORACLE_CAP} vertices, got {g.n}")
    parts: list[tuple[list[int], dict[tuple[int, int], Fraction]]] = []
    for component in connected_components(g):
        members = sorted(component)
        solution = _component_solution(g, component, members)
        if solution is None:
            return False, None
        parts.append((members, solution))

    rows: dict[Coalition, Allocation] = {}
    n = g.n
    for mask in range(1, 1 << n):
        s = frozenset(i for i in range(n) if mask >> i & 1)
        payoff: dict[int, Fraction] = {}
        for members, solution in parts:
            local_mask = 0
            local_members = []
            for local, v in enumerate(members):
                if mask >> v & 1:
                    local_mask |= 1 << local
                    local_members.append((local, v))
            for local, v in local_members:
                payoff[v] = solution[(local_mask, local)]
        rows[s] = Allocation(s, payoff)
    return True, AllocationScheme(g, rows=rows)


def _component_solution(
    g: WeightedGraph, component: Coalition, members: list[int]
) -> dict[tuple[int, int], Fraction] | None:
    if len(members) == 1:
        return {(1, 0): ZERO}
    sub = induced_subgraph(g, component)
    signature, arrangement = _canonical_form(sub)
    if signature not in _component_cache:
        canonical = _apply_arrangement(sub, arrangement)
        _component_cache[signature] = _solve_connected(canonical)
    canonical_solution = _component_cache[signature]
    if canonical_solution is None:
        return None
    # position p of the canonical graph holds local vertex arrangement[p]
    to_canonical = {v: p for p, v in enumerate(arrangement)}
    solution: dict[tuple[int, int], Fraction] = {}
    k = len(members)
    for mask in range(1, 1 << k):
        canonical_mask = 0
        for local in range(k):
            if mask >> local & 1:
                canonical_mask |= 1 << to_canonical[local]
        for local in range(k):
            if mask >> local & 1:
                solution[(mask, local)] = canonical_solution[
                    (canonical_mask, to_canonical[local])
                ]
    return solution


def _canonical_form(sub: WeightedGraph) -> tuple[tuple, tuple[int, ...]]:
    """Lexicographically smallest weight signature over all vertex orders."""
    k = sub.n
    matrix = [[_ABSENT] * k for _ in range(k)]
    for i, j, w in sub.edges():
        matrix[i][j] = w
        matrix[j][i] = w
    pairs = [(a, b) for a in range(k) for b in range(a + 1, k)]
    best_sig = None
    best_arrangement = None
    for arrangement in permutations(range(k)):
        sig = tuple(matrix[arrangement[a]][arrangement[b]] for a, b in pairs)
        if best_sig is None or sig < best_sig:
            best_sig = sig
            best_arrangement = arrangement
    return (k, best_sig), best_arrangement


def _apply_arrangement(sub: WeightedGraph, arrangement: tuple[int, ...]) -> WeightedGraph:
    labels = [str(p) for p in range(sub.n)]
    position = {v: p for p, v in enumerate(arrangement)}
    edges = {
        tuple(sorted((position[i], position[j]))): w for i, j, w in sub.edges()
    }
    return WeightedGraph(labels, edges)


def _solve_connected(gc: WeightedGraph) -> dict[tuple[int, int], Fraction] | None:
    """Exact PMAS feasibility for one connected graph, all coordinates local."""
    k = gc.n
    table = gamma_table(gc)
    scale = math.lcm(*(value.denominator for value in table.values))
    if k >= 5 and _solve_system(table, k, scale, 3) is None:
        # the constraints among coalitions of size <= 3 are a subset of the
        # full system, so their infeasibility already settles the verdict
        return None
    values = _solve_system(table, k, scale, k)
    if values is None:
        return None
    solution: dict[tuple[int, int], Fraction] = {}
    for mask in range(1, 1 << k):
        for i in range(k):
            if not mask >> i & 1:
                continue
            if mask.bit_count() == 1:
                solution[(mask, i)] = ZERO
            else:
                solution[(mask, i)] = values[(mask, i)] / scale
    return solution


def _solve_system(
    table, k: int, scale: int, max_size: int
) -> dict[tuple[int, int], Fraction] | None:
    """Solve the scheme system restricted to coalitions of size <= ``max_size``.

    Singleton variables are fixed at 0 beforehand (their worth is 0), which
    turns the covers leaving singletons into plain nonnegativity.
    """
    var_index: dict[tuple[int, int], int] = {}
    masks = [
        mask for mask in range(1, 1 << k) if 2 <= mask.bit_count() <= max_size
    ]
    for mask in masks:
        for i in range(k):
            if mask >> i & 1:
                var_index[(mask, i)] = len(var_index)
    nvars = len(var_index)

    eq_rows = []
    eq_rhs = []
    for mask in masks:
        row = [0] * nvars
        for i in range(k):
            if mask >> i & 1:
                row[var_index[(mask, i)]] = 1
        eq_rows.append(row)
        eq_rhs.append(int(table.mask_value(mask) * scale))

    ub_rows = []
    for mask in masks:
        if mask.bit_count() == max_size:
            continue
        for j in range(k):
            if mask >> j & 1:
                continue
            bigger = mask | (1 << j)
            for i in range(k):
                if mask >> i & 1:
                    row = [0] * nvars
                    row[var_index[(mask, i)]] = 1
                    row[var_index[(bigger, i)]] = -1
                    ub_rows.append(row)

    a_eq = np.array(eq_rows, dtype=object)
    b_eq = np.array(eq_rhs, dtype=object)
    a_ub = np.array(ub_rows, dtype=object)
    b_ub = np.zeros(len(ub_rows), dtype=object)
    values = solve_feasibility(a_eq, b_eq, a_ub, b_ub)
    if values is None:
        return None
    return {key: values[idx] for key, idx in var_index.items()}


# ---------------------------------------------------------------------------
# instance generators
# ---------------------------------------------------------------------------

def random_weighted_graph(
    n: int,
    edge_probability,
    weight_pool: Iterable,
    seed: int,
) -> WeightedGraph:
    """Seeded Erdos-Renyi weighted graph, reproducible across platforms.

    The generator is the Mersenne Twister behind :class:`random.Random`,
    consumed in a fixed documented order: vertices are labeled "1".."n";
    unordered pairs are visited lexicographically; pair inclusion draws
    ``randrange(q)`` against probability p/q (in lowest terms) and each
    included edge then draws ``randrange(len(pool))`` for its weight.
    """
    if n < 1:
        raise DomainError("graphs need at least one vertex")
    p = as_rational(edge_probability)
    if not 0 <= p <= 1:
        raise DomainError(f"edge probability must lie in [0,1], got {p}")
    pool = [as_rational(w) for w in weight_pool]
    if not pool:
        raise DomainError("the weight pool must be nonempty")
    if any(w <= 0 for w in pool):
        raise DomainError("weight pools must be strictly positive")
    rng = random.Random(seed)
    labels = [str(i + 1) for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.randrange(p.denominator) < p.numerator:
                weight = pool[rng.randrange(len(pool))]
                edges.append((labels[i], labels[j], weight))
    return WeightedGraph.from_edges(edges, vertices=labels)


def _spans_connected(n: int, edges: list[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    joined = 0
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            joined += 1
    return joined == n - 1


def exhaustive_instances(max_n: int) -> Iterator[WeightedGraph]:
    """The documented exhaustive sweep with weights from ``EXHAUSTIVE_POOL``.

    For n up to min(max_n, 4): every edge subset of the complete graph and
    every weight assignment from the pool. For n = 5 (when max_n >= 5):
    every edge subset whose graph is connected on all five vertices, again
    with every pool assignment. Edge subsets are enumerated as bitmasks over
    lexicographic vertex pairs; assignments follow ``itertools.product``.
    """
    for n in range(1, min(max_n, 5) + 1):
        labels = [str(i + 1) for i in range(n)]
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for subset in range(1 << len(pairs)):
            chosen = [pairs[t] for t in range(len(pairs)) if subset >> t & 1]
            if n == 5 and not _spans_connected(n, chosen):
                continue
            for weights in product(EXHAUSTIVE_POOL, repeat=len(chosen)):
                yield WeightedGraph.from_edges(
                    [
                        (labels[a], labels[b], w)
                        for (a, b), w in zip(chosen, weights)
                    ],
                    vertices=labels,
                )


def random_instances(
    max_n: int, trials: int, seed: int
) -> Iterator[WeightedGraph]:
    """Seeded random part of the harness: n in [2, max_n], edge probability
    1/2, weights from ``RANDOM_POOL``; one derived seed per trial."""
    master = random.Random(seed)
    for _ in range(trials):
        n = master.randrange(2, max_n + 1)
        trial_seed = master.getrandbits(32)
        yield random_weighted_graph(n, Fraction(1, 2), RANDOM_POOL, trial_seed)


def equivalence_harness(max_n: int, trials: int, seed: int) -> dict:
    """Cross-validate the structural decision against the feasibility oracle.

    Runs the documented exhaustive sweep (up to ``max_n``, never past 5) and
    ``trials`` seeded random graphs, and reports any disagreement with the
    instance serialized for replay. Deterministic: identical arguments give
    identical reports.
    """
    if max_n < 1:
        raise DomainError("max_n must be at least 1")
    if max_n > ORACLE_CAP:
        raise CapacityError(f"the oracle is capped at {ORACLE_CAP} vertices, got {max_n}")
    if trials < 0:
        raise DomainError("trials must be nonnegative")
    if trials > 0 and max_n < 2:
        raise DomainError("random trials need max_n >= 2")

    dumps: list[str] = []
    exhaustive_count = 0
    exhaustive_bad = 0
    for g in exhaustive_instances(max_n):
        exhaustive_count += 1
        if not _routes_agree(g, dumps):
            exhaustive_bad += 1
    random_bad = 0
    for g in random_instances(max_n, trials, seed):
        if not _routes_agree(g, dumps):
            random_bad += 1
    return {
        "exhaustive": {"instances": exhaustive_count, "disagreements": exhaustive_bad},
        "random": {"trials": trials, "disagreements": random_bad},
        "disagreement_dumps": dumps,
    }


def _routes_agree(g: WeightedGraph, dumps: list[str]) -> bool:
    decided = decide_population_monotonic(g).population_monotonic
    feasible = pmas_feasibility(g)[0]
    if decided == feasible:
        return True
    dumps.append(serialize_graph(g))
    return False
