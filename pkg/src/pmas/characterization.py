"""Recognition of population monotonic matching games.

The decision procedure is purely structural: a game is population monotonic
exactly when every component of its graph is a double-star whose two centers
form a dominant pair. Deciding that takes one degree sweep plus an O(1)
check per candidate center pair, so it scales to very large instances.

The scanners are diagnostics, not the decision mechanism: they search for
violated weight inequalities on induced K3 / P4 / paw / diamond patterns and
for the six forbidden induced subgraphs, and their findings enrich negative
certificates when the component is small enough to scan.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .certificates import (
    Certificate,
    DoubleStarWitness,
    ForbiddenSubgraph,
    Lemma,
    LemmaViolation,
    Pattern,
    PmDecision,
    StructuralFailure,
)
from .errors import CapacityError, DomainError
from .graph import Coalition, WeightedGraph, connected_components, induced_subgraph

WEIGHT_SCAN_CAP = 500
PATTERN_SCAN_CAP = 200

ZERO = Fraction(0)

_LEMMA_ORDER = {Lemma.K3: 0, Lemma.P4: 1, Lemma.PAW: 2, Lemma.DIAMOND: 3}
_PATTERN_ORDER = {kind: k for k, kind in enumerate(Pattern)}


# ---------------------------------------------------------------------------
# induced-pattern enumeration
# ---------------------------------------------------------------------------

def _triangles(g: WeightedGraph) -> Iterator[tuple[int, int, int]]:
    """All induced triangles as ordered tuples x < y < z."""
    for x, y, _w in g.edges():
        for z in g.neighbors(x):
            if z > y and g.has_edge(y, z):
                yield x, y, z


def _induced_p4s(g: WeightedGraph) -> Iterator[tuple[int, int, int, int]]:
    """Induced paths a-b-c-d, one orientation per path (a < d)."""
    for i, j, _w in g.edges():
        for b, c in ((i, j), (j, i)):
            for a in g.neighbors(b):
                if a == c or g.has_edge(a, c):
                    continue
                for d in g.neighbors(c):
                    if d <= a or d == b or g.has_edge(d, b) or g.has_edge(d, a):
                        continue
                    yield a, b, c, d


def _paws(g: WeightedGraph) -> Iterator[tuple[int, int, int, int]]:
    """Induced paws as (pendant, hub, other, other) with the triangle {hub, o1, o2}."""
    for x, y, z in _triangles(g):
        tri = (x, y, z)
        for hub in tri:
            o1, o2 = (t for t in tri if t != hub)
            for p in g.neighbors(hub):
                if p in tri or g.has_edge(p, o1) or g.has_edge(p, o2):
                    continue
                yield p, hub, o1, o2


def _diamonds(g: WeightedGraph) -> Iterator[tuple[int, int, int, int]]:
    """Induced diamonds as (a, b, c, d): shared edge bc, degree-2 pair a < d."""
    for b, c, _w in g.edges():
        common = [k for k in g.neighbors(b) if g.has_edge(c, k)]
        for ai in range(len(common)):
            a = common[ai]
            for d in common[ai + 1:]:
                if not g.has_edge(a, d):
                    yield (a, b, c, d) if a < d else (d, b, c, a)


def _scan_c4(g: WeightedGraph) -> Iterator[frozenset[int]]:
    for u in range(g.n):
        for w in range(u + 1, g.n):
            if g.has_edge(u, w):
                continue
            common = [k for k in g.neighbors(u) if g.has_edge(w, k)]
            for vi in range(len(common)):
                for x in common[vi + 1:]:
                    if not g.has_edge(common[vi], x):
                        yield frozenset((u, common[vi], w, x))


def _scan_k4(g: WeightedGraph) -> Iterator[frozenset[int]]:
    for x, y, z in _triangles(g):
        for t in g.neighbors(z):
            if t > z and g.has_edge(x, t) and g.has_edge(y, t):
                yield frozenset((x, y, z, t))


def _scan_p5(g: WeightedGraph) -> Iterator[frozenset[int]]:
    for a, b, c, d in _induced_p4s(g):
        for e in g.neighbors(d):
            if e not in (a, b, c) and not (
                g.has_edge(e, a) or g.has_edge(e, b) or g.has_edge(e, c)
            ):
                yield frozenset((a, b, c, d, e))
        for e in g.neighbors(a):
            if e not in (b, c, d) and not (
                g.has_edge(e, b) or g.has_edge(e, c) or g.has_edge(e, d)
            ):
                yield frozenset((a, b, c, d, e))


def _scan_c5(g: WeightedGraph) -> Iterator[frozenset[int]]:
    for a, b, c, d in _induced_p4s(g):
        for e in g.neighbors(a):
            if e not in (b, c, d) and g.has_edge(e, d) \
                    and not g.has_edge(e, b) and not g.has_edge(e, c):
                yield frozenset((a, b, c, d, e))


def _scan_co_banner(g: WeightedGraph) -> Iterator[frozenset[int]]:
    for p, hub, o1, o2 in _paws(g):
        for q in g.neighbors(p):
            if q in (hub, o1, o2):
                continue
            if g.has_edge(q, hub) or g.has_edge(q, o1) or g.has_edge(q, o2):
                continue
            yield frozenset((q, p, hub, o1, o2))


def _scan_butterfly(g: WeightedGraph) -> Iterator[frozenset[int]]:
    for c in range(g.n):
        nbrs = g.neighbors(c)
        wings = [
            (a, b)
            for ai, a in enumerate(nbrs)
            for b in nbrs[ai + 1:]
            if g.has_edge(a, b)
        ]
        for wi in range(len(wings)):
            a1, b1 = wings[wi]
            for a2, b2 in wings[wi + 1:]:
                if len({a1, b1, a2, b2}) < 4:
                    continue
                if g.has_edge(a1, a2) or g.has_edge(a1, b2) \
                        or g.has_edge(b1, a2) or g.has_edge(b1, b2):
                    continue
                yield frozenset((a1, b1, c, a2, b2))


_PATTERN_SCANNERS = {
    Pattern.C4: _scan_c4,
    Pattern.K4: _scan_k4,
    Pattern.P5: _scan_p5,
    Pattern.C5: _scan_c5,
    Pattern.CO_BANNER: _scan_co_banner,
    Pattern.BUTTERFLY: _scan_butterfly,
}


# ---------------------------------------------------------------------------
# scanners
# ---------------------------------------------------------------------------

def scan_weight_lemmas(g: WeightedGraph) -> list[LemmaViolation]:
    """Every violated weight inequality over induced K3/P4/paw/diamond patterns.

    Each record's vertex tuple follows its lemma's labeling convention
    (K3: w12 <= w13 <= w23; paw: pendant first, w23 >= w24; diamond: 23 the
    shared edge). The list is empty iff no violation exists.
    """
    if g.n > WEIGHT_SCAN_CAP:
        raise CapacityError(
            f"weight-lemma scan is capped at {WEIGHT_SCAN_CAP} vertices, got {g.n}"
        )
    out: list[LemmaViolation] = []

    for x, y, z in _triangles(g):
        edges = sorted(
            ((g.weight(a, b), (a, b)) for a, b in ((x, y), (x, z), (y, z))),
            key=lambda item: (item[0], item[1]),
        )
        w_max, (p, q) = edges[2]
        v1 = next(t for t in (x, y, z) if t not in (p, q))
        v2, v3 = sorted((p, q), key=lambda t: (g.weight(v1, t), t))
        rhs = g.weight(v1, v2) + g.weight(v1, v3)
        if w_max < rhs:
            out.append(LemmaViolation(Lemma.K3, (v1, v2, v3), w_max, rhs))

    for a, b, c, d in _induced_p4s(g):
        lhs = g.weight(b, c)
        rhs = g.weight(a, b) + g.weight(c, d)
        if lhs < rhs:
            out.append(LemmaViolation(Lemma.P4, (a, b, c, d), lhs, rhs))

    for p, hub, o1, o2 in _paws(g):
        v3, v4 = sorted((o1, o2), key=lambda t: (-g.weight(hub, t), t))
        lhs = g.weight(hub, v3)
        w34 = g.weight(v3, v4)
        rhs_a = g.weight(p, hub) + w34
        if lhs < rhs_a:
            out.append(LemmaViolation(Lemma.PAW, (p, hub, v3, v4), lhs, rhs_a))
        rhs_b = g.weight(hub, v4) + w34
        if lhs < rhs_b:
            out.append(LemmaViolation(Lemma.PAW, (p, hub, v3, v4), lhs, rhs_b))

    for a, b, c, d in _diamonds(g):
        lhs = g.weight(b, c)
        rhs_a = g.weight(a, b) + g.weight(a, c)
        if lhs < rhs_a:
            out.append(LemmaViolation(Lemma.DIAMOND, (a, b, c, d), lhs, rhs_a))
        rhs_d = g.weight(d, b) + g.weight(d, c)
        if lhs < rhs_d:
            out.append(LemmaViolation(Lemma.DIAMOND, (a, b, c, d), lhs, rhs_d))

    out.sort(key=lambda lv: (_LEMMA_ORDER[lv.lemma], lv.vertices, lv.lhs, lv.rhs))
    return out


def scan_forbidden_subgraphs(
    g: WeightedGraph, first_only: bool = False
) -> list[ForbiddenSubgraph]:
    """Induced occurrences of C4, K4, P5, C5, co-banner and butterfly.

    With ``first_only`` the search stops at one occurrence per pattern.
    Output order is canonical: pattern, then sorted vertex tuple.
    """
    if g.n > PATTERN_SCAN_CAP:
        raise CapacityError(
            f"forbidden-subgraph scan is capped at {PATTERN_SCAN_CAP} vertices, got {g.n}"
        )
    out: list[ForbiddenSubgraph] = []
    for kind in Pattern:
        seen: set[frozenset[int]] = set()
        for vertices in _PATTERN_SCANNERS[kind](g):
            if vertices in seen:
                continue
            seen.add(vertices)
            if first_only:
                break
        out.extend(
            ForbiddenSubgraph(kind, vs) for vs in sorted(seen, key=sorted)[: 1 if first_only else None]
        )
    return out


# ---------------------------------------------------------------------------
# the decision procedure
# ---------------------------------------------------------------------------

def candidate_center_pairs(
    g: WeightedGraph, component: Coalition, *, assume_maximal: bool = False
) -> list[tuple[int, int]]:
    """Adjacent pairs that could be the centers of a double-star on ``component``.

    Non-center vertices of a double-star have degree at most 2, so vertices
    of degree >= 3 are forced centers: two or more pin the pair down, exactly
    one is paired with each neighbor, and with none every edge is a candidate.

    ``assume_maximal`` declares the set to be a maximal connected component,
    which skips the connectivity pre-check and the in-set degree filtering
    (they are no-ops there, but linear in the component's edge count).
    """
    members = sorted(component)
    if not members:
        raise DomainError("component must be nonempty")
    if assume_maximal:
        if not (0 <= members[0] and members[-1] < g.n):
            raise DomainError("component contains vertices outside the graph")
        deg_in = {v: g.degree(v) for v in members}
    else:
        _check_connected(g, component, members)
        deg_in = {
            v: sum(1 for u in g.neighbors(v) if u in component) for v in members
        }
    if len(members) == 1:
        return []
    high = [v for v in members if deg_in[v] >= 3]
    if len(high) > 2:
        return []
    if len(high) == 2:
        u, v = high
        return [(u, v)] if g.has_edge(u, v) else []
    if len(high) == 1:
        h = high[0]
        return sorted(
            (h, nb) if h < nb else (nb, h) for nb in g.neighbors(h) if nb in component
        )
    return [
        (u, v)
        for u in members
        for v in g.neighbors(u)
        if u < v and v in component
    ]


def _check_connected(g: WeightedGraph, component: Coalition, members: list[int]) -> None:
    if not (0 <= members[0] and members[-1] < g.n):
        raise DomainError("component contains vertices outside the graph")
    seen = {members[0]}
    stack = [members[0]]
    while stack:
        u = stack.pop()
        for v in g.neighbors(u):
            if v in component and v not in seen:
                seen.add(v)
                stack.append(v)
    if len(seen) != len(members):
        raise DomainError("component is not connected")


def is_dominant_pair(g: WeightedGraph, u: int, v: int) -> tuple[bool, Fraction]:
    """Whether w(u,v) covers the heaviest other edges at u and at v.

    Returns ``(dominant, margin)`` with ``margin = w(u,v) - sigma_u - sigma_v``
    where ``sigma_x`` is the maximum weight among edges at ``x`` other than
    uv (0 when there are none; that empty-max convention subsumes the
    degenerate case of a pendant center).
    """
    w_uv = g.weight(u, v)
    sigma_u = max((w for x, w in g.incident(u) if x != v), default=ZERO)
    sigma_v = max((w for x, w in g.incident(v) if x != u), default=ZERO)
    margin = w_uv - sigma_u - sigma_v
    return margin >= 0, margin


def _top_two(g: WeightedGraph, v: int) -> tuple[tuple[Fraction, int] | None, Fraction]:
    """Heaviest incident (weight, neighbor) and the second-heaviest weight."""
    top1: tuple[Fraction, int] | None = None
    top2 = ZERO
    for u, w in g.incident(v):
        if top1 is None or w > top1[0]:
            if top1 is not None:
                top2 = top1[0]
            top1 = (w, u)
        elif w > top2:
            top2 = w
    return top1, top2


def decide_population_monotonic(g: WeightedGraph) -> PmDecision:
    """Decide population monotonicity; always structural, never exponential.

    Population monotonic iff every component is a single vertex or a
    double-star with a dominant center pair. On success the decision holds
    one witness per component (the best pair by margin, ties broken by
    vertex index); on failure it holds a certificate for the first failing
    component, enriched with a scanner finding when the component is small
    enough to scan.
    """
    witnesses: list[DoubleStarWitness] = []
    for component in connected_components(g):
        if len(component) == 1:
            (c,) = component
            witnesses.append(
                DoubleStarWitness(
                    graph=g,
                    component=component,
                    centers=(c,),
                    leaf_attachment={},
                    sigma_u=ZERO,
                    sigma_v=ZERO,
                    margin=ZERO,
                    _validated=True,
                )
            )
            continue
        # components are maximal, so in-component degrees are plain degrees
        edge_count = sum(g.degree(v) for v in component) // 2
        top: dict[int, tuple[tuple[Fraction, int] | None, Fraction]] = {}

        def sigma_excl(x: int, other: int) -> Fraction:
            if x not in top:
                top[x] = _top_two(g, x)
            top1, top2 = top[x]
            if top1 is None:
                return ZERO
            return top2 if top1[1] == other else top1[0]

        best: tuple[Fraction, int, int] | None = None
        structurally_ok = False
        for u, v in candidate_center_pairs(g, component, assume_maximal=True):
            if g.degree(u) + g.degree(v) - 1 != edge_count:
                continue  # {u, v} does not cover every edge: not a double-star
            structurally_ok = True
            margin = g.weight(u, v) - sigma_excl(u, v) - sigma_excl(v, u)
            if margin >= 0 and (best is None or (-margin, u, v) < (-best[0], best[1], best[2])):
                best = (margin, u, v)
        if best is None:
            reason = "no_dominant_pair" if structurally_ok else "not_double_star"
            detail = (
                "a center pair covers the component but none is dominant"
                if structurally_ok
                else "no adjacent pair of centers covers every edge of the component"
            )
            certificate = _enrich_certificate(g, component) or StructuralFailure(
                component, reason, detail
            )
            return PmDecision(False, [], certificate)
        margin, u, v = best
        att_u, att_v = (u,), (v,)
        att_both = (u, v) if u < v else (v, u)
        leaf_attachment = {}
        for w in component:
            if w == u or w == v:
                continue
            if g.degree(w) == 2:
                leaf_attachment[w] = att_both
            else:
                leaf_attachment[w] = att_u if g.has_edge(w, u) else att_v
        witnesses.append(
            DoubleStarWitness(
                graph=g,
                component=component,
                centers=(u, v),
                leaf_attachment=leaf_attachment,
                sigma_u=sigma_excl(u, v),
                sigma_v=sigma_excl(v, u),
                margin=margin,
                _validated=True,
            )
        )
    return PmDecision(True, witnesses, None)


def _enrich_certificate(g: WeightedGraph, component: Coalition) -> Certificate | None:
    """Best-effort concrete evidence on a failing component, within scan caps."""
    members = sorted(component)
    to_global = dict(enumerate(members))
    if len(members) <= WEIGHT_SCAN_CAP:
        sub = induced_subgraph(g, component)
        violations = scan_weight_lemmas(sub)
        if violations:
            first = violations[0]
            return LemmaViolation(
                first.lemma,
                tuple(to_global[i] for i in first.vertices),
                first.lhs,
                first.rhs,
            )
        if len(members) <= PATTERN_SCAN_CAP:
            found = scan_forbidden_subgraphs(sub, first_only=True)
            if found:
                first_pattern = found[0]
                return ForbiddenSubgraph(
                    first_pattern.kind,
                    frozenset(to_global[i] for i in first_pattern.vertices),
                )
    return None
