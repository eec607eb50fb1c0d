"""Allocation schemes: the double-star construction, verification, core check.

The constructed scheme follows the dominant-pair split rule: non-centers
always receive 0; a lone center in a coalition receives the weight of its
heaviest available leaf edge; when both centers are present they share the
center edge's weight in proportion to their component-wide sigma values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .certificates import DoubleStarWitness
from .characterization import decide_population_monotonic
from .errors import (
    CapacityError,
    DomainError,
    IncompleteSchemeError,
    NotPopulationMonotonicError,
)
from .graph import Coalition, WeightedGraph
from .matching import gamma_table
from .rational import format_rational, parse_rational

SCHEME_CAP = 20

ZERO = Fraction(0)


@dataclass
class Allocation:
    """Payoffs for the members of one coalition (domain == coalition)."""

    coalition: Coalition
    payoff: dict[int, Fraction]

    def total(self) -> Fraction:
        return sum(self.payoff.values(), ZERO)


def local_sigma(
    g: WeightedGraph,
    i: int,
    s: Coalition,
    excluded_edge: tuple[int, int] | None,
) -> Fraction:
    """Max weight over edges at ``i`` inside ``s`` with ``excluded_edge`` removed; 0 if none."""
    if i not in s:
        raise DomainError("sigma is only defined for members of the coalition")
    excluded = frozenset(excluded_edge) if excluded_edge is not None else frozenset()
    best = ZERO
    for j, w in g.incident(i):
        if j in s and frozenset((i, j)) != excluded and w > best:
            best = w
    return best


def allocate(witness: DoubleStarWitness, s: Coalition) -> Allocation:
    """The scheme row for coalition ``s`` of a witnessed double-star component."""
    witness.ensure_valid()
    if not s:
        raise DomainError("coalitions must be nonempty")
    if not s <= witness.component:
        raise DomainError("coalition is not contained in the witness component")
    payoff = {i: ZERO for i in s}
    if len(witness.centers) == 1:
        return Allocation(s, payoff)
    g = witness.graph
    u, v = witness.centers
    in_u, in_v = u in s, v in s
    if in_u and in_v:
        w_uv = g.weight(u, v)
        total_sigma = witness.sigma_u + witness.sigma_v
        if total_sigma == 0:
            payoff[u] = w_uv / 2
            payoff[v] = w_uv / 2
        else:
            payoff[u] = w_uv * witness.sigma_u / total_sigma
            payoff[v] = w_uv * witness.sigma_v / total_sigma
    elif in_u:
        payoff[u] = local_sigma(g, u, s, (u, v))
    elif in_v:
        payoff[v] = local_sigma(g, v, s, (u, v))
    return Allocation(s, payoff)


class AllocationScheme:
    """A family of allocations, one per nonempty coalition.

    Materialized schemes store their rows; lazy schemes compute each row on
    demand from a pure function, so they work at any graph size.
    """

    def __init__(
        self,
        graph: WeightedGraph,
        rows: dict[Coalition, Allocation] | None = None,
        fn: Callable[[Coalition], Allocation] | None = None,
    ):
        if (rows is None) == (fn is None):
            raise DomainError("scheme needs exactly one of stored rows or a row function")
        self.graph = graph
        self._rows = rows
        self._fn = fn

    @property
    def materialized(self) -> bool:
        return self._rows is not None

    def allocation(self, s: Coalition) -> Allocation:
        if not s:
            raise DomainError("coalitions must be nonempty")
        if not s <= self.graph.vertex_set():
            raise DomainError("coalition contains vertices outside the graph")
        if self._rows is not None:
            try:
                return self._rows[frozenset(s)]
            except KeyError:
                members = ",".join(self.graph.sorted_labels(s))
                raise IncompleteSchemeError(f"scheme has no row for coalition {{{members}}}") from None
        return self._fn(s)

    def rows(self) -> Iterator[tuple[Coalition, Allocation]]:
        """All rows in canonical order (size, then lexicographic member labels)."""
        if self._rows is not None:
            order = sorted(self._rows, key=self._row_key)
        else:
            order = coalitions_in_canonical_order(self.graph)
        for s in order:
            yield s, self.allocation(s)

    def _row_key(self, s: Coalition):
        return (len(s), self.graph.sorted_labels(s))


def coalitions_in_canonical_order(g: WeightedGraph) -> list[Coalition]:
    """All nonempty coalitions sorted by size, then lexicographic member labels."""
    if g.n > SCHEME_CAP:
        raise CapacityError(
            f"coalition enumeration is capped at {SCHEME_CAP} vertices, got {g.n}"
        )
    coalitions = [
        frozenset(i for i in range(g.n) if mask >> i & 1)
        for mask in range(1, 1 << g.n)
    ]
    coalitions.sort(key=lambda s: (len(s), g.sorted_labels(s)))
    return coalitions


def construct_scheme(g: WeightedGraph, mode: str = "lazy") -> AllocationScheme:
    """A population monotonic allocation scheme for a population monotonic game.

    Raises :class:`NotPopulationMonotonicError` (carrying the decision and
    its certificate) when the game admits none. ``mode`` is ``"lazy"`` (a
    pure row function, any size) or ``"materialized"`` (all rows, capped).
    """
    if mode not in ("lazy", "materialized"):
        raise DomainError(f"unknown scheme mode {mode!r}")
    decision = decide_population_monotonic(g)
    if not decision.population_monotonic:
        raise NotPopulationMonotonicError(decision)
    witnesses = sorted(decision.witnesses, key=lambda w: min(w.component))

    def row(s: Coalition) -> Allocation:
        if not s:
            raise DomainError("coalitions must be nonempty")
        if not s <= g.vertex_set():
            raise DomainError("coalition contains vertices outside the graph")
        payoff: dict[int, Fraction] = {}
        for witness in witnesses:
            part = s & witness.component
            if part:
                payoff.update(allocate(witness, part).payoff)
        return Allocation(frozenset(s), payoff)

    if mode == "lazy":
        return AllocationScheme(g, fn=row)
    rows = {s: row(s) for s in coalitions_in_canonical_order(g)}
    return AllocationScheme(g, rows=rows)


@dataclass
class SchemeFailure:
    """First violated condition found by :func:`verify_scheme`."""

    kind: str  # "efficiency" | "monotonicity"
    coalition: Coalition
    superset: Coalition | None
    player: int | None
    lhs: Fraction
    rhs: Fraction


@dataclass
class SchemeVerification:
    ok: bool
    failure: SchemeFailure | None = None


def verify_scheme(g: WeightedGraph, scheme: AllocationScheme) -> SchemeVerification:
    """Check a scheme against the definition: exact efficiency on every
    coalition, then monotonicity over all cover pairs.

    Cover pairs suffice: payoffs are monotone along any chain of one-element
    additions, and set inclusion is always realized by such a chain.
    """
    if g.n > SCHEME_CAP:
        raise CapacityError(f"verification is capped at {SCHEME_CAP} vertices, got {g.n}")
    table = gamma_table(g)
    order = coalitions_in_canonical_order(g)
    rows: dict[Coalition, Allocation] = {}
    for s in order:
        row = scheme.allocation(s)
        if frozenset(row.payoff) != s:
            members = ",".join(g.sorted_labels(s))
            raise IncompleteSchemeError(
                f"row for coalition {{{members}}} does not pay exactly its members"
            )
        rows[s] = row
        total = row.total()
        expected = table.value(s)
        if total != expected:
            return SchemeVerification(
                False, SchemeFailure("efficiency", s, None, None, total, expected)
            )
    label_order = sorted(range(g.n), key=g.label_of)
    for s in order:
        row = rows[s]
        for j in label_order:
            if j in s:
                continue
            bigger = rows[s | {j}]
            for i in sorted(s, key=g.label_of):
                if row.payoff[i] > bigger.payoff[i]:
                    return SchemeVerification(
                        False,
                        SchemeFailure(
                            "monotonicity", s, s | {j}, i, row.payoff[i], bigger.payoff[i]
                        ),
                    )
    return SchemeVerification(True)


def is_core_allocation(g: WeightedGraph, x: Allocation) -> bool:
    """Exact core test: efficient on the grand coalition and no coalition
    can improve on its own."""
    if x.coalition != g.vertex_set():
        raise DomainError("core allocations must cover the grand coalition")
    if frozenset(x.payoff) != x.coalition:
        raise DomainError("allocation must pay exactly the grand coalition")
    if g.n > SCHEME_CAP:
        raise CapacityError(f"core check is capped at {SCHEME_CAP} vertices, got {g.n}")
    table = gamma_table(g)
    sums = [ZERO] * (1 << g.n)
    for mask in range(1, 1 << g.n):
        low = (mask & -mask).bit_length() - 1
        sums[mask] = sums[mask & (mask - 1)] + x.payoff[low]
    if sums[(1 << g.n) - 1] != table.mask_value((1 << g.n) - 1):
        return False
    return all(sums[mask] >= table.mask_value(mask) for mask in range(1, 1 << g.n))


# ---------------------------------------------------------------------------
# JSON scheme files
# ---------------------------------------------------------------------------

def scheme_to_json(scheme: AllocationScheme) -> dict:
    """Scheme file document: rows sorted by size then lexicographic members."""
    coalitions = []
    for s, row in scheme.rows():
        members = scheme.graph.sorted_labels(s)
        payoff = {
            scheme.graph.label_of(i): format_rational(value)
            for i, value in row.payoff.items()
        }
        coalitions.append({"members": members, "payoff": payoff})
    return {"coalitions": coalitions}


def scheme_from_json(g: WeightedGraph, doc: dict) -> AllocationScheme:
    """Load a materialized scheme; malformed documents raise DomainError."""
    if not isinstance(doc, dict) or not isinstance(doc.get("coalitions"), list):
        raise DomainError("scheme document must be an object with a 'coalitions' list")
    rows: dict[Coalition, Allocation] = {}
    for entry in doc["coalitions"]:
        if not isinstance(entry, dict) or "members" not in entry or "payoff" not in entry:
            raise DomainError("each scheme row needs 'members' and 'payoff'")
        members = entry["members"]
        payoff_doc = entry["payoff"]
        if not isinstance(members, list) or not isinstance(payoff_doc, dict):
            raise DomainError("scheme row fields have the wrong shape")
        s = g.coalition(members)
        if len(s) != len(members):
            raise DomainError("scheme row lists a member twice")
        if set(payoff_doc) != set(members):
            raise DomainError("scheme row payoff does not cover exactly its members")
        payoff = {g.index_of(lb): parse_rational(str(text)) for lb, text in payoff_doc.items()}
        if s in rows:
            raise DomainError("scheme document repeats a coalition")
        rows[s] = Allocation(s, payoff)
    return AllocationScheme(g, rows=rows)
