"""Machine-checkable evidence attached to population-monotonicity decisions.

A positive decision carries one witness per component (the double-star
structure and its dominant center pair). A negative decision carries a
certificate: a violated weight inequality, a forbidden induced subgraph,
or a structural-failure record naming the offending component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import DomainError
from .graph import Coalition, WeightedGraph


class Lemma(Enum):
    """Weight-inequality families scanned over small induced patterns."""

    K3 = "K3"
    P4 = "P4"
    PAW = "paw"
    DIAMOND = "diamond"


class Pattern(Enum):
    """Forbidden induced subgraphs (weight-independent obstructions)."""

    C4 = "C4"
    K4 = "K4"
    P5 = "P5"
    C5 = "C5"
    CO_BANNER = "co-banner"
    BUTTERFLY = "butterfly"


#: vertex count of each forbidden pattern
PATTERN_SIZE = {
    Pattern.C4: 4,
    Pattern.K4: 4,
    Pattern.P5: 5,
    Pattern.C5: 5,
    Pattern.CO_BANNER: 5,
    Pattern.BUTTERFLY: 5,
}

#: edge set of each pattern on vertices 0..k-1, in its reference labeling
PATTERN_EDGES = {
    Pattern.C4: ((0, 1), (1, 2), (2, 3), (0, 3)),
    Pattern.K4: ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)),
    Pattern.P5: ((0, 1), (1, 2), (2, 3), (3, 4)),
    Pattern.C5: ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4)),
    # triangle {2,3,4} with a two-edge tail 0-1-2
    Pattern.CO_BANNER: ((0, 1), (1, 2), (2, 3), (2, 4), (3, 4)),
    # two triangles glued at vertex 2
    Pattern.BUTTERFLY: ((0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)),
}


@dataclass(frozen=True)
class LemmaViolation:
    """One violated instance of a weight lemma.

    ``vertices`` follows the lemma's labeling convention; the lemma asserts
    ``lhs >= rhs`` for population monotonic games and here ``lhs < rhs``
    holds exactly.
    """

    lemma: Lemma
    vertices: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class ForbiddenSubgraph:
    """An induced occurrence of one of the six forbidden patterns."""

    kind: Pattern
    vertices: Coalition


@dataclass(frozen=True)
class StructuralFailure:
    """A component that is not a double-star with a dominant center pair."""

    component: Coalition
    reason: str  # "not_double_star" | "no_dominant_pair"
    detail: str = ""


Certificate = LemmaViolation | ForbiddenSubgraph | StructuralFailure


@dataclass(eq=True)
class DoubleStarWitness:
    """Recognized double-star component with a dominant center pair.

    ``centers`` holds one vertex for a trivial single-vertex component and
    two adjacent vertices otherwise. ``sigma_u`` / ``sigma_v`` are the
    heaviest edges at each center once the center edge is removed (0 when
    none), and ``margin = w(u,v) - sigma_u - sigma_v >= 0`` is the
    dominance slack. ``leaf_attachment`` maps every non-center vertex to
    the centers it touches.
    """

    graph: WeightedGraph
    component: Coalition
    centers: tuple[int, ...]
    leaf_attachment: dict[int, tuple[int, ...]]
    sigma_u: Fraction
    sigma_v: Fraction
    margin: Fraction
    _validated: bool = field(default=False, compare=False, repr=False)

    def ensure_valid(self) -> None:
        """Re-check the witness invariants against its graph (cached)."""
        if self._validated:
            return
        self.validate()
        self._validated = True

    def validate(self) -> None:
        g = self.graph
        comp = self.component
        if not all(0 <= v < g.n for v in comp):
            raise DomainError("witness component contains unknown vertices")
        if len(self.centers) == 1:
            (c,) = self.centers
            if comp != frozenset((c,)) or g.degree(c) != 0:
                raise DomainError("trivial witness must cover a single isolated vertex")
            return
        u, v = self.centers
        if u not in comp or v not in comp or not g.has_edge(u, v):
            raise DomainError("witness centers must be an adjacent pair in the component")
        centers = {u, v}
        for w in comp:
            if w in centers:
                continue
            nbrs = set(g.neighbors(w))
            if not nbrs or not nbrs <= centers:
                raise DomainError(
                    f"vertex {g.label_of(w)!r} is not a leaf hanging off the centers"
                )
            if tuple(sorted(nbrs)) != self.leaf_attachment.get(w):
                raise DomainError("leaf_attachment disagrees with the graph")
        sigma_u = _sigma(g, u, v, comp)
        sigma_v = _sigma(g, v, u, comp)
        if (sigma_u, sigma_v) != (self.sigma_u, self.sigma_v):
            raise DomainError("witness sigma values disagree with the graph")
        margin = g.weight(u, v) - sigma_u - sigma_v
        if margin != self.margin:
            raise DomainError("witness margin disagrees with the graph")
        if margin < 0:
            raise DomainError("center pair is not dominant")


def _sigma(g: WeightedGraph, center: int, other: int, comp: Coalition) -> Fraction:
    best = Fraction(0)
    for j, w in g.incident(center):
        if j != other and j in comp and w > best:
            best = w
    return best


@dataclass
class PmDecision:
    """Outcome of the population-monotonicity decision.

    Exactly one of ``witnesses`` (when population monotonic, one witness
    per component) and ``certificate`` (when not) is populated.
    """

    population_monotonic: bool
    witnesses: list[DoubleStarWitness] = field(default_factory=list)
    certificate: Certificate | None = None
