"""Weighted dual graphs and their blowup transformations.

A resolution graph is a connected tree of at least two vertices, each
carrying an integer weight <= -1, whose intersection matrix (weights on the
diagonal, 1 for every edge) is negative definite.  Graphs are immutable;
blowups return a fresh graph together with a bookkeeping event, and a
GraphHistory strings events together while tracking which vertex carries
each original end's curve variable.
"""

import json
from dataclasses import dataclass

from .errors import (
    BadWeightError,
    IndexMismatchError,
    NotAnEdgeError,
    NotAnEndError,
    NotATreeError,
    NotNegativeDefiniteError,
    ParseError,
    TooSmallError,
    UnknownVertexError,
)
from .linalg import is_negative_definite


def _is_int(x):
    return type(x) is int


class ResolutionGraph:
    """Immutable vertex-weighted tree with negative definite form."""

    __slots__ = ("_ids", "_pos", "_weights", "_edges", "_adj", "_imatrix",
                 "_hash")

    def __init__(self, weights, edges):
        """weights: mapping vertex id -> weight; edges: iterable of id pairs."""
        items = sorted(weights.items())
        if any(not _is_int(v) or not _is_int(w) for v, w in items):
            raise ParseError("vertex ids and weights must be integers")
        if len(items) < 2:
            raise TooSmallError("a resolution graph needs at least 2 vertices")
        for v, w in items:
            if w >= 0:
                raise BadWeightError(f"vertex {v} has weight {w} >= 0")
        self._ids = tuple(v for v, _ in items)
        self._pos = {v: i for i, v in enumerate(self._ids)}
        self._weights = {v: w for v, w in items}

        seen = set()
        adj = {v: [] for v in self._ids}
        for pair in edges:
            a, b = pair
            if a not in self._pos or b not in self._pos:
                raise ParseError(f"edge {pair!r} references an unknown vertex")
            if a == b:
                raise NotATreeError(f"self-loop at vertex {a}")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise NotATreeError(f"duplicate edge {key}")
            seen.add(key)
            adj[a].append(b)
            adj[b].append(a)
        self._edges = tuple(sorted(seen))
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}

        if len(self._edges) != len(self._ids) - 1 or not self._connected():
            raise NotATreeError("graph is not a connected tree")

        self._imatrix = None
        self._hash = None
        if not is_negative_definite(self.intersection_matrix()):
            raise NotNegativeDefiniteError(
                "intersection matrix is not negative definite")

    def _connected(self):
        start = self._ids[0]
        seen = {start}
        stack = [start]
        while stack:
            for u in self._adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self._ids)

    # --- basic queries ------------------------------------------------------

    @property
    def vertex_ids(self):
        return self._ids

    @property
    def edges(self):
        return self._edges

    def __len__(self):
        return len(self._ids)

    def __contains__(self, v):
        return v in self._pos

    def index(self, v):
        try:
            return self._pos[v]
        except KeyError:
            raise UnknownVertexError(f"vertex {v} is not in the graph") from None

    def weight(self, v):
        self.index(v)
        return self._weights[v]

    def neighbors(self, v):
        self.index(v)
        return self._adj[v]

    def degree(self, v):
        """Valence delta_v = number of neighbours."""
        return len(self.neighbors(v))

    def has_edge(self, v, w):
        return v in self._pos and w in self._adj[v]

    @property
    def ends(self):
        return tuple(v for v in self._ids if len(self._adj[v]) == 1)

    @property
    def nodes(self):
        return tuple(v for v in self._ids if len(self._adj[v]) >= 3)

    def intersection_matrix(self):
        """Symmetric matrix: weights on the diagonal, 1 for each edge."""
        if self._imatrix is None:
            n = len(self._ids)
            m = [[0] * n for _ in range(n)]
            for i, v in enumerate(self._ids):
                m[i][i] = self._weights[v]
                for u in self._adj[v]:
                    m[i][self._pos[u]] = 1
            self._imatrix = m
        return [list(row) for row in self._imatrix]

    def to_dict(self):
        return {
            "vertices": [{"id": v, "weight": self._weights[v]}
                         for v in self._ids],
            "edges": [list(e) for e in self._edges],
        }

    # --- identity -------------------------------------------------------------

    def _key(self):
        return (self._ids, tuple(self._weights[v] for v in self._ids),
                self._edges)

    def __eq__(self, other):
        return isinstance(other, ResolutionGraph) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return (f"ResolutionGraph({len(self._ids)} vertices, "
                f"ends={list(self.ends)}, nodes={list(self.nodes)})")


def graph_from_dict(obj):
    """Build a validated graph from a parsed input document."""
    if not isinstance(obj, dict):
        raise ParseError("graph document must be a JSON object")
    try:
        vertices = obj["vertices"]
        edges = obj["edges"]
    except (KeyError, TypeError):
        raise ParseError("graph document needs 'vertices' and 'edges'") from None
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise ParseError("'vertices' and 'edges' must be lists")
    weights = {}
    for entry in vertices:
        if not isinstance(entry, dict) or "id" not in entry or "weight" not in entry:
            raise ParseError(f"bad vertex entry {entry!r}")
        v, w = entry["id"], entry["weight"]
        if not _is_int(v) or not _is_int(w):
            raise ParseError(f"bad vertex entry {entry!r}")
        if v in weights:
            raise ParseError(f"duplicate vertex id {v}")
        weights[v] = w
    pairs = []
    for e in edges:
        if not isinstance(e, list) or len(e) != 2 or not all(_is_int(x) for x in e):
            raise ParseError(f"bad edge entry {e!r}")
        pairs.append((e[0], e[1]))
    return ResolutionGraph(weights, pairs)


def parse_and_validate(text):
    """Parse a JSON graph document and verify every graph invariant."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return graph_from_dict(obj)


parse_graph = parse_and_validate


def is_minimal(g):
    """True when no (-1)-vertex of valence <= 2 exists (nothing blow-downable)."""
    return all(g.weight(v) != -1 or g.degree(v) >= 3 for v in g.vertex_ids)


def branches(g, v):
    """Connected components of the graph minus v, one per neighbour of v.

    Components are returned as frozensets ordered by (size, sorted vertex
    list) so the output is deterministic.
    """
    g.index(v)
    comps = []
    seen = {v}
    for start in g.neighbors(v):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            for u in g.neighbors(stack.pop()):
                if u not in seen and u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        comps.append(frozenset(comp))
    comps.sort(key=lambda c: (len(c), sorted(c)))
    return tuple(comps)


@dataclass(frozen=True)
class BlowupEvent:
    """One blowup: kind is 'edge' (center = the two edge vertices) or 'end'
    (center = the end vertex whose boundary point was blown up)."""

    kind: str
    center: tuple
    new_vertex: int
    weight_changes: tuple  # of (vertex, old weight, new weight)

    def to_dict(self):
        return {
            "kind": self.kind,
            "center": list(self.center),
            "new_vertex": self.new_vertex,
            "weight_changes": [list(c) for c in self.weight_changes],
        }


def _fresh_id(g):
    i = 1
    while i in g:
        i += 1
    return i


def blowup_edge(g, v, w):
    """Blow up the intersection point of the edge (v, w).

    Inserts a fresh (-1)-vertex between v and w and decrements both their
    weights.  Negative definiteness is re-verified by the constructor.
    """
    if not g.has_edge(v, w):
        raise NotAnEdgeError(f"({v}, {w}) is not an edge")
    u = _fresh_id(g)
    weights = {x: g.weight(x) for x in g.vertex_ids}
    changes = ((v, weights[v], weights[v] - 1), (w, weights[w], weights[w] - 1))
    weights[v] -= 1
    weights[w] -= 1
    weights[u] = -1
    key = (min(v, w), max(v, w))
    edges = [e for e in g.edges if e != key] + [(v, u), (u, w)]
    event = BlowupEvent(kind="edge", center=key, new_vertex=u,
                        weight_changes=changes)
    return ResolutionGraph(weights, edges), event


def blowup_end_point(g, i):
    """Blow up a point of the end curve on the end vertex i.

    Attaches a fresh (-1)-leaf to i and decrements i's weight; the curve
    variable that lived on i moves to the new leaf (tracked by GraphHistory).
    """
    g.index(i)
    if g.degree(i) != 1:
        raise NotAnEndError(f"vertex {i} is not an end")
    u = _fresh_id(g)
    weights = {x: g.weight(x) for x in g.vertex_ids}
    changes = ((i, weights[i], weights[i] - 1),)
    weights[i] -= 1
    weights[u] = -1
    edges = list(g.edges) + [(i, u)]
    event = BlowupEvent(kind="end", center=(i,), new_vertex=u,
                        weight_changes=changes)
    return ResolutionGraph(weights, edges), event


class GraphHistory:
    """Append-only record of blowups applied to an initial graph.

    end_map sends each original end index to the vertex currently carrying
    its curve variable: edge blowups never move it, an end-point blowup moves
    it onto the new leaf.
    """

    def __init__(self, graph):
        self._graphs = [graph]
        self._events = []
        self._end_map = {e: e for e in graph.ends}

    @property
    def initial(self):
        return self._graphs[0]

    @property
    def current(self):
        return self._graphs[-1]

    @property
    def events(self):
        return tuple(self._events)

    @property
    def end_map(self):
        return dict(self._end_map)

    def graph_before(self, k):
        return self._graphs[k]

    def graph_after(self, k):
        return self._graphs[k + 1]

    def blowup_edge(self, v, w):
        g2, event = blowup_edge(self.current, v, w)
        self._graphs.append(g2)
        self._events.append(event)
        return event

    def blowup_end(self, label):
        if label not in self._end_map:
            raise NotAnEndError(f"{label} is not a tracked end index")
        g2, event = blowup_end_point(self.current, self._end_map[label])
        self._graphs.append(g2)
        self._events.append(event)
        self._end_map[label] = event.new_vertex
        return event

    def event_index(self, event):
        for k, e in enumerate(self._events):
            if e is event:
                return k
        raise IndexMismatchError("event does not belong to this history")

    def replay(self):
        """Re-apply all events from the initial graph (sanity check)."""
        g = self.initial
        for event in self._events:
            if event.kind == "edge":
                g, ev = blowup_edge(g, *event.center)
            else:
                g, ev = blowup_end_point(g, event.center[0])
            if ev != event:
                raise IndexMismatchError("recorded event does not replay")
        return g

    def pullback_to_current(self, cycle):
        """Pull a cycle on any recorded graph forward to the current graph."""
        for k, g in enumerate(self._graphs):
            if cycle.graph == g:
                for event in self._events[k:]:
                    cycle = pullback_vertex_cycle(self, event, cycle)
                return cycle
        raise IndexMismatchError("cycle does not live on a recorded graph")


def pullback_vertex_cycle(history, event, cycle):
    """Total transform of a cycle through one blowup event.

    Old coefficients are kept; the new vertex receives the multiplicity of
    the cycle at the blown-up point, i.e. the sum of the coefficients at the
    one or two vertices through that point.
    """
    from .lattice import QCycle

    k = history.event_index(event)
    pre, post = history.graph_before(k), history.graph_after(k)
    if cycle.graph != pre:
        raise IndexMismatchError("cycle is not indexed by the pre-event graph")
    coeffs = {v: cycle.coefficient(v) for v in pre.vertex_ids}
    coeffs[event.new_vertex] = sum(cycle.coefficient(v) for v in event.center)
    return QCycle.from_coefficients(post, coeffs)
