"""Edge-weighted simple graphs with exact rational weights.

The edge-list text format: ``#`` starts a comment running to end of line,
``u v w`` declares edge {u,v} with weight ``w`` (``"3/2"`` or ``"1.5"``,
parsed exactly), and a line with a single token ``u`` declares an isolated
vertex. Vertex labels are arbitrary non-whitespace strings. Edges with
weight exactly 0 are dropped at parse time: they can never contribute to a
maximum weight matching.

Vertices carry external string labels and are numbered internally with
dense indices 0..n-1, assigned in first-appearance order. Coalitions are
frozensets of internal indices.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import ConflictError, DomainError, ParseError
from .rational import as_rational, format_rational

Coalition = frozenset[int]

Edge = tuple[int, int]


def _check_label(label: str) -> str:
    if not isinstance(label, str) or not label:
        raise DomainError(f"vertex labels must be nonempty strings, got {label!r}")
    if any(ch.isspace() for ch in label) or "#" in label:
        raise DomainError(f"vertex label {label!r} may not contain whitespace or '#'")
    return label


class WeightedGraph:
    """Immutable simple graph with strictly positive exact-rational edge weights.

    Instances must not be mutated after construction; every query below is
    pure, so graphs are safe to share across threads.
    """

    __slots__ = ("_labels", "_index", "_adj", "_edges")

    def __init__(self, labels: Iterable[str], edges: dict[Edge, Fraction]):
        labels = tuple(_check_label(lb) for lb in labels)
        index = {lb: i for i, lb in enumerate(labels)}
        if len(index) != len(labels):
            raise DomainError("duplicate vertex labels")
        n = len(labels)
        adj: list[dict[int, Fraction]] = [{} for _ in range(n)]
        clean: dict[Edge, Fraction] = {}
        for (i, j), w in edges.items():
            if not (0 <= i < n and 0 <= j < n):
                raise DomainError(f"edge ({i},{j}) references unknown vertex index")
            if i == j:
                raise DomainError(f"loop at vertex {labels[i]!r}: graphs are simple")
            if i > j:
                i, j = j, i
            w = as_rational(w)
            if w <= 0:
                raise DomainError(f"edge weight must be positive, got {w}")
            if clean.setdefault((i, j), w) != w:
                raise ConflictError(f"edge {labels[i]} {labels[j]} declared with conflicting weights")
        for (i, j), w in sorted(clean.items()):
            adj[i][j] = w
            adj[j][i] = w
        self._labels = labels
        self._index = index
        self._adj = adj
        self._edges = dict(sorted(clean.items()))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str, object]] = (),
                   vertices: Iterable[str] = ()) -> "WeightedGraph":
        """Build a graph from (label, label, weight) triples.

        Vertex indices follow first appearance: explicit ``vertices`` first,
        then edge endpoints in the order given. Weights may be ints,
        Fractions or numeric strings; zero-weight edges are dropped (their
        endpoints are kept as vertices), negative weights are rejected.
        """
        labels: list[str] = []
        index: dict[str, int] = {}

        def intern(label: str) -> int:
            if label not in index:
                index[label] = len(labels)
                labels.append(_check_label(label))
            return index[label]

        for label in vertices:
            intern(label)
        edge_map: dict[Edge, Fraction] = {}
        for u, v, w in edges:
            i, j = intern(u), intern(v)
            if i == j:
                raise DomainError(f"loop at vertex {u!r}: graphs are simple")
            w = as_rational(w)
            if w < 0:
                raise DomainError(f"edge weight must be nonnegative, got {w}")
            if w == 0:
                continue
            key = (i, j) if i < j else (j, i)
            if edge_map.setdefault(key, w) != w:
                raise ConflictError(f"edge {u} {v} declared with conflicting weights")
        return cls(labels, edge_map)

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    def label_of(self, i: int) -> str:
        return self._labels[i]

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DomainError(f"unknown vertex label {label!r}") from None

    def has_vertex(self, label: str) -> bool:
        return label in self._index

    def vertex_set(self) -> Coalition:
        return frozenset(range(self.n))

    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> Iterator[tuple[int, int, Fraction]]:
        """Edges as (i, j, weight) with i < j, in sorted index order."""
        for (i, j), w in self._edges.items():
            yield i, j, w

    def has_edge(self, i: int, j: int) -> bool:
        return j in self._adj[i]

    def weight(self, i: int, j: int) -> Fraction:
        try:
            return self._adj[i][j]
        except KeyError:
            raise DomainError(
                f"no edge between {self._labels[i]!r} and {self._labels[j]!r}"
            ) from None

    def neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(self._adj[i])

    def incident(self, i: int) -> Iterator[tuple[int, Fraction]]:
        yield from self._adj[i].items()

    def degree(self, i: int) -> int:
        return len(self._adj[i])

    # -- label <-> coalition helpers --------------------------------------

    def coalition(self, labels: Iterable[str]) -> Coalition:
        return frozenset(self.index_of(lb) for lb in labels)

    def sorted_labels(self, s: Iterable[int]) -> list[str]:
        return sorted(self._labels[i] for i in s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._labels == other._labels and self._edges == other._edges

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={len(self._edges)})"


def parse_graph(text: str) -> WeightedGraph:
    """Parse an edge-list document into a graph.

    Raises :class:`ParseError` (with line number) on malformed lines,
    :class:`DomainError` on negative weights or loops, and
    :class:`ConflictError` when an edge reappears with a different weight.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    edge_map: dict[Edge, Fraction] = {}

    def intern(label: str) -> int:
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 1:
            intern(tokens[0])
        elif len(tokens) == 3:
            u, v, w_text = tokens
            i, j = intern(u), intern(v)
            if i == j:
                raise DomainError(f"line {line_no}: loop at vertex {u!r}")
            try:
                w = parse_weight_token(w_text)
            except DomainError as exc:
                raise ParseError(str(exc), line_no) from None
            if w < 0:
                raise DomainError(f"line {line_no}: negative weight {w_text}")
            if w == 0:
                continue
            key = (i, j) if i < j else (j, i)
            if edge_map.setdefault(key, w) != w:
                raise ConflictError(
                    f"edge {u} {v} redeclared with conflicting weight", line_no
                )
        else:
            raise ParseError(
                f"expected 'u v w' or a single vertex label, got {line!r}", line_no
            )
    try:
        return WeightedGraph(labels, edge_map)
    except DomainError as exc:
        raise ParseError(str(exc)) from exc


def parse_weight_token(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"not a rational weight: {token!r}") from None


def serialize_graph(g: WeightedGraph) -> str:
    """Canonical edge-list text; ``parse_graph`` on the result reproduces ``g``.

    All vertices are emitted first (fixing the label-to-index assignment),
    then edges in sorted index order.
    """
    lines = [g.label_of(i) for i in range(g.n)]
    lines.extend(
        f"{g.label_of(i)} {g.label_of(j)} {format_rational(w)}" for i, j, w in g.edges()
    )
    return "\n".join(lines) + ("\n" if lines else "")


def connected_components(g: WeightedGraph) -> list[Coalition]:
    """Maximal connected vertex sets, ordered by smallest internal index."""
    adj = g._adj
    seen = [False] * g.n
    components: list[Coalition] = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        members = [start]
        while queue:
            for v in adj[queue.popleft()]:
                if not seen[v]:
                    seen[v] = True
                    members.append(v)
                    queue.append(v)
        components.append(frozenset(members))
    return components


def induced_subgraph(g: WeightedGraph, s: Coalition) -> WeightedGraph:
    """Subgraph on ``s`` keeping every edge of ``g`` inside ``s``, weights intact.

    Vertices keep their labels; internal indices are reassigned in the order
    of the original indices.
    """
    members = sorted(s)
    if members and not (0 <= members[0] and members[-1] < g.n):
        raise DomainError("coalition contains vertices outside the graph")
    local = {v: k for k, v in enumerate(members)}
    edges = {
        (local[i], local[j]): w
        for i, j, w in g.edges()
        if i in local and j in local
    }
    return WeightedGraph([g.label_of(v) for v in members], edges)
