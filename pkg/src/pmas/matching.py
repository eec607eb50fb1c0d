"""Characteristic function of the matching game.

A coalition's worth is the maximum weight of a matching in the subgraph it
induces. At desk scale this is computed by an exact memoized subset
recursion (no blossom machinery: large instances only ever take the
closed-form route through a recognized double-star component).
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

from .errors import CapacityError, DomainError
from .graph import Coalition, WeightedGraph

if TYPE_CHECKING:  # pragma: no cover - import cycle guard, types only
    from .certificates import DoubleStarWitness

MATCHING_CAP = 24
TABLE_CAP = 20

ZERO = Fraction(0)


def _coalition_mask(s: Coalition, n: int) -> int:
    mask = 0
    for v in s:
        if not (isinstance(v, int) and 0 <= v < n):
            raise DomainError(f"coalition member {v!r} is not a vertex of the graph")
        mask |= 1 << v
    return mask


def _best_value(g: WeightedGraph, mask: int, memo: dict[int, Fraction]) -> Fraction:
    """Max matching weight within ``mask``; lowest set vertex is matched or skipped."""
    known = memo.get(mask)
    if known is not None:
        return known
    if mask == 0:
        return ZERO
    v = (mask & -mask).bit_length() - 1
    rest = mask & ~(1 << v)
    best = _best_value(g, rest, memo)
    for u, w in g.incident(v):
        bit = 1 << u
        if rest & bit:
            cand = w + _best_value(g, rest & ~bit, memo)
            if cand > best:
                best = cand
    memo[mask] = best
    return best


def max_weight_matching(g: WeightedGraph) -> tuple[frozenset[tuple[int, int]], Fraction]:
    """A maximum-weight matching of ``g`` and its (unique) total weight.

    Exact subset dynamic program, hence the hard cap of 24 vertices. On
    ties the program prefers leaving the lowest-index vertex unmatched.
    """
    if g.n > MATCHING_CAP:
        raise CapacityError(f"matching is capped at {MATCHING_CAP} vertices, got {g.n}")
    memo: dict[int, Fraction] = {}
    full = (1 << g.n) - 1
    value = _best_value(g, full, memo)
    edges: list[tuple[int, int]] = []
    mask = full
    while mask:
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        if _best_value(g, rest, memo) == memo[mask]:
            mask = rest
            continue
        for u, w in sorted(g.incident(v)):
            bit = 1 << u
            if rest & bit and w + _best_value(g, rest & ~bit, memo) == memo[mask]:
                edges.append((v, u) if v < u else (u, v))
                mask = rest & ~bit
                break
        else:  # pragma: no cover - the DP value always has a supporting choice
            raise AssertionError("matching reconstruction lost track of the optimum")
    return frozenset(edges), value


def characteristic_value(g: WeightedGraph, s: Coalition) -> Fraction:
    """gamma(S): maximum matching weight in the subgraph induced by ``s``."""
    if len(s) > MATCHING_CAP:
        raise CapacityError(
            f"characteristic value is capped at coalitions of {MATCHING_CAP}, got {len(s)}"
        )
    mask = _coalition_mask(s, g.n)
    return _best_value(g, mask, {})


class GammaTable:
    """The complete characteristic function of a game, indexed by coalition.

    ``values[mask]`` holds gamma of the coalition whose members are the set
    bits of ``mask``. Immutable once built.
    """

    __slots__ = ("graph", "values")

    def __init__(self, graph: WeightedGraph, values: list[Fraction]):
        self.graph = graph
        self.values = values

    def value(self, s: Coalition) -> Fraction:
        return self.values[_coalition_mask(s, self.graph.n)]

    def mask_value(self, mask: int) -> Fraction:
        return self.values[mask]


def gamma_table(g: WeightedGraph) -> GammaTable:
    """gamma over all 2^n coalitions in one bottom-up subset sweep."""
    if g.n > TABLE_CAP:
        raise CapacityError(f"gamma tables are capped at {TABLE_CAP} vertices, got {g.n}")
    n = g.n
    values = [ZERO] * (1 << n)
    incident = [tuple(g.incident(v)) for v in range(n)]
    for mask in range(1, 1 << n):
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        best = values[rest]
        for u, w in incident[v]:
            bit = 1 << u
            if rest & bit:
                cand = w + values[rest & ~bit]
                if cand > best:
                    best = cand
        values[mask] = best
    return GammaTable(g, values)


def double_star_gamma(witness: "DoubleStarWitness", s: Coalition) -> Fraction:
    """gamma(S) in closed form on a dominant-pair double-star component.

    With centers u, v: gamma(S) is the center edge weight when both centers
    are in S; the heaviest remaining edge at the lone center when exactly
    one is; and 0 when neither is (non-centers are an independent set).
    """
    witness.ensure_valid()
    if not s <= witness.component:
        raise DomainError("coalition is not contained in the witness component")
    g = witness.graph
    if len(witness.centers) == 1:
        return ZERO
    u, v = witness.centers
    in_u, in_v = u in s, v in s
    if in_u and in_v:
        return g.weight(u, v)
    if in_u:
        return _sigma_within(g, u, s, (u, v))
    if in_v:
        return _sigma_within(g, v, s, (u, v))
    return ZERO


def _sigma_within(g: WeightedGraph, i: int, s: Coalition, excluded: tuple[int, int]) -> Fraction:
    """Max weight over edges incident to ``i`` inside ``s``, the center edge excluded."""
    ex = frozenset(excluded)
    best = ZERO
    for j, w in g.incident(i):
        if j in s and {i, j} != ex and w > best:
            best = w
    return best
