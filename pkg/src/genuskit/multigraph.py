"""Dart-based undirected multigraphs and topological editing.

Every edge is stored as a pair of darts (edge halves): edge ``k`` owns darts
``2k`` and ``2k + 1``, so ``partner(d) == d ^ 1``.  Loops are allowed (both
darts of the edge share an owner) and so are parallel edges.  Graphs are
immutable once built; editing operations return new graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


class InvalidReference(LookupError):
    """A vertex or edge reference does not exist in the graph."""


class GraphFormatError(ValueError):
    """Malformed edge-list text."""


class MultiGraph:
    """Undirected multigraph with stable integer vertex ids.

    Parameters
    ----------
    edges: iterable of (u, v) pairs; order fixes edge ids (edge k = k-th pair).
    vertices: extra vertex ids beyond those mentioned by edges (isolated ones).
    labels: optional mapping from vertex id to a text label (pure metadata).
    """

    __slots__ = ("_vertices", "_edges", "_labels", "_darts_at", "_vertex_set")

    def __init__(self, edges=(), vertices=(), labels=None):
        edge_list = []
        vertex_set = set()
        for pair in edges:
            u, v = pair
            if not (isinstance(u, int) and isinstance(v, int)) or u < 0 or v < 0:
                raise ValueError(f"vertex ids must be non-negative ints, got {pair!r}")
            edge_list.append((u, v))
            vertex_set.add(u)
            vertex_set.add(v)
        for v in vertices:
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"vertex ids must be non-negative ints, got {v!r}")
            vertex_set.add(v)
        self._edges = tuple(edge_list)
        self._vertices = tuple(sorted(vertex_set))
        self._vertex_set = vertex_set
        self._labels = dict(labels) if labels else {}
        for v in self._labels:
            if v not in vertex_set:
                raise InvalidReference(f"label refers to unknown vertex {v}")
        darts_at = {v: [] for v in self._vertices}
        for k, (u, v) in enumerate(self._edges):
            darts_at[u].append(2 * k)
            darts_at[v].append(2 * k + 1)
        self._darts_at = {v: tuple(ds) for v, ds in darts_at.items()}

    # -- structure ------------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> tuple:
        return self._edges

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def num_darts(self) -> int:
        return 2 * len(self._edges)

    def darts(self) -> range:
        return range(2 * len(self._edges))

    def has_vertex(self, v) -> bool:
        return v in self._vertex_set

    def darts_at(self, v) -> tuple:
        try:
            return self._darts_at[v]
        except KeyError:
            raise InvalidReference(f"no vertex {v}") from None

    def degree(self, v) -> int:
        return len(self.darts_at(v))

    def dart_owner(self, d: int) -> int:
        u, v = self._edges[d >> 1]
        return u if d & 1 == 0 else v

    @staticmethod
    def dart_partner(d: int) -> int:
        return d ^ 1

    @staticmethod
    def dart_edge(d: int) -> int:
        return d >> 1

    def edge_endpoints(self, e: int) -> tuple:
        try:
            return self._edges[e]
        except IndexError:
            raise InvalidReference(f"no edge {e}") from None

    def is_loop(self, e: int) -> bool:
        u, v = self.edge_endpoints(e)
        return u == v

    def neighbors(self, v) -> set:
        out = set()
        for d in self.darts_at(v):
            out.add(self.dart_owner(d ^ 1))
        return out

    def resolve_edge(self, edge) -> int:
        """Accept an edge id or an endpoint pair; return the edge id."""
        if isinstance(edge, int):
            if 0 <= edge < len(self._edges):
                return edge
            raise InvalidReference(f"no edge {edge}")
        u, v = edge
        for k, (a, b) in enumerate(self._edges):
            if (a, b) == (u, v) or (a, b) == (v, u):
                return k
        raise InvalidReference(f"no edge between {u} and {v}")

    # -- labels ----------------------------------------------------------

    @property
    def labels(self) -> dict:
        return dict(self._labels)

    def label(self, v) -> str | None:
        return self._labels.get(v)

    def vertex_by_label(self, name: str) -> int:
        for v, lab in self._labels.items():
            if lab == name:
                return v
        raise InvalidReference(f"no vertex labeled {name!r}")

    # -- traversal -------------------------------------------------------

    def connected_components(self) -> list[set]:
        seen = set()
        comps = []
        for start in self._vertices:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for d in self._darts_at[v]:
                    w = self.dart_owner(d ^ 1)
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def validate(self) -> None:
        """Check the dart invariants; raises AssertionError on corruption."""
        assert self.num_darts == 2 * self.num_edges
        for d in self.darts():
            assert self.dart_partner(self.dart_partner(d)) == d
            assert self.dart_partner(d) != d
        assert sum(self.degree(v) for v in self._vertices) == self.num_darts
        for v, ds in self._darts_at.items():
            for d in ds:
                assert self.dart_owner(d) == v
        for v in self._labels:
            assert v in self._vertex_set

    def __repr__(self):
        return f"MultiGraph(|V|={self.num_vertices}, |E|={self.num_edges})"

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return (
            self._vertices == other._vertices
            and sorted(tuple(sorted(e)) for e in self._edges)
            == sorted(tuple(sorted(e)) for e in other._edges)
        )

    def __hash__(self):
        return hash((self._vertices, tuple(sorted(tuple(sorted(e)) for e in self._edges))))


@dataclass(frozen=True)
class GraphInvariants:
    num_vertices: int
    num_edges: int
    num_components: int
    betti: int
    is_cubic: bool
    is_triangle_free: bool
    is_biconnected: bool


def from_edge_list(pairs: Iterable, isolated: Iterable = (), labels=None) -> MultiGraph:
    return MultiGraph(edges=pairs, vertices=isolated, labels=labels)


def betti(g: MultiGraph) -> int:
    """Cycle-space dimension |E| - |V| + c(G); non-negative."""
    b = g.num_edges - g.num_vertices + len(g.connected_components())
    assert b >= 0
    return b


def _fresh_ids(g: MultiGraph, k: int) -> list[int]:
    base = (max(g.vertices) + 1) if g.vertices else 0
    return [base + i for i in range(k)]


def subdivide(g: MultiGraph, edge, k: int) -> MultiGraph:
    """Replace an edge by a path through k fresh 2-valent vertices."""
    if k < 1:
        raise ValueError("k must be >= 1")
    e = g.resolve_edge(edge)
    u, v = g.edge_endpoints(e)
    mids = _fresh_ids(g, k)
    new_edges = [pair for i, pair in enumerate(g.edges) if i != e]
    chain = [u] + mids + [v]
    new_edges.extend(zip(chain, chain[1:]))
    return MultiGraph(edges=new_edges, vertices=g.vertices, labels=g.labels)


def smooth(g: MultiGraph) -> MultiGraph:
    """Suppress 2-valent vertices until none remain.

    Each 2-valent vertex with two distinct incident edges is replaced by a
    single edge joining its neighbours.  A component that is a bare cycle
    stops at one vertex carrying one loop (its smallest vertex id), and a
    vertex already carrying a single loop is left alone; both conventions
    keep the Betti number intact.
    """
    return _smooth_with_lift(g)[0]


def _smooth_with_lift(g: MultiGraph):
    """Smooth and return (graph, dart_lift) with dart_lift mapping each dart
    of the smoothed graph to the first dart of the path it replaces in g."""
    def is_kept(v):
        ds = g.darts_at(v)
        if len(ds) != 2:
            return True
        return ds[0] ^ 1 == ds[1]  # single loop: terminal form of a cycle

    kept = {v for v in g.vertices if is_kept(v)}
    for comp in g.connected_components():
        if not (comp & kept):
            kept.add(min(comp))  # bare cycle: keep one representative

    new_edges = []
    path_starts = []  # per new edge: (first dart from u side, first dart from v side)
    seen = set()
    for v in sorted(kept):
        for d0 in g.darts_at(v):
            if d0 in seen:
                continue
            # walk away from v until another kept vertex is reached
            walk = [d0]
            w = g.dart_owner(d0 ^ 1)
            while w not in kept:
                a, b = g.darts_at(w)
                nxt = b if a == d0 ^ 1 else a
                walk.append(nxt)
                d0 = nxt
                w = g.dart_owner(d0 ^ 1)
            seen.add(walk[0])
            seen.add(walk[-1] ^ 1)
            new_edges.append((v, w))
            path_starts.append((walk[0], walk[-1] ^ 1))

    labels = {v: lab for v, lab in g.labels.items() if v in kept}
    isolated = [v for v in kept if g.degree(v) == 0]
    smoothed = MultiGraph(edges=new_edges, vertices=isolated, labels=labels)
    dart_lift = {}
    for k, (du, dv) in enumerate(path_starts):
        dart_lift[2 * k] = du
        dart_lift[2 * k + 1] = dv
    return smoothed, dart_lift


def disjoint_union(g1: MultiGraph, g2: MultiGraph):
    """Disjoint union; g2's vertex ids are shifted above g1's.

    Returns (graph, offset) where g2 vertex x appears as x + offset.
    """
    offset = (max(g1.vertices) + 1) if g1.vertices else 0
    edges = list(g1.edges) + [(u + offset, v + offset) for u, v in g2.edges]
    vertices = list(g1.vertices) + [v + offset for v in g2.vertices]
    labels = g1.labels
    labels.update({v + offset: lab for v, lab in g2.labels.items()})
    return MultiGraph(edges=edges, vertices=vertices, labels=labels), offset


def bar_amalgamation(g1: MultiGraph, v1: int, g2: MultiGraph, v2: int) -> MultiGraph:
    """Disjoint union of g1 and g2 plus one edge between v1 and v2."""
    if not g1.has_vertex(v1):
        raise InvalidReference(f"no vertex {v1} in first graph")
    if not g2.has_vertex(v2):
        raise InvalidReference(f"no vertex {v2} in second graph")
    union, offset = disjoint_union(g1, g2)
    edges = list(union.edges) + [(v1, v2 + offset)]
    return MultiGraph(edges=edges, vertices=union.vertices, labels=union.labels)


def _is_triangle_free(g: MultiGraph) -> bool:
    adj = {v: g.neighbors(v) - {v} for v in g.vertices}
    for u, v in g.edges:
        if u == v:
            continue
        if (adj[u] & adj[v]) - {u, v}:
            return False
    return True


def _has_cutvertex(g: MultiGraph) -> bool:
    # iterative Tarjan lowpoint over darts; parallel edges count as back edges
    disc = {}
    low = {}
    timer = 0
    for root in g.vertices:
        if root in disc:
            continue
        stack = [(root, None, iter(g.darts_at(root)))]
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        while stack:
            v, in_dart, it = stack[-1]
            advanced = False
            for d in it:
                if d == in_dart:
                    continue  # skip only the tree dart we entered on
                w = g.dart_owner(d ^ 1)
                if w == v:
                    continue  # loops are irrelevant to connectivity
                if w not in disc:
                    if v == root:
                        root_children += 1
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, d ^ 1, iter(g.darts_at(w))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if parent != root and low[v] >= disc[parent]:
                        return True
        if root_children > 1:
            return True
    return False


def invariants(g: MultiGraph) -> GraphInvariants:
    comps = g.connected_components()
    degs = [g.degree(v) for v in g.vertices]
    biconnected = (
        len(comps) == 1
        and g.num_vertices >= 3
        and not _has_cutvertex(g)
    )
    return GraphInvariants(
        num_vertices=g.num_vertices,
        num_edges=g.num_edges,
        num_components=len(comps),
        betti=g.num_edges - g.num_vertices + len(comps),
        is_cubic=bool(degs) and all(d == 3 for d in degs),
        is_triangle_free=_is_triangle_free(g),
        is_biconnected=biconnected,
    )


# -- edge-list text format ------------------------------------------------
#
# One "u v" line per edge, '#' comments, optional "label V NAME" lines, and
# optional bare "V" lines declaring isolated vertices.

def parse_edge_list(text: str) -> MultiGraph:
    edges = []
    isolated = []
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "label":
                if len(parts) != 3:
                    raise ValueError("expected 'label V NAME'")
                labels[int(parts[1])] = parts[2]
            elif len(parts) == 1:
                isolated.append(int(parts[0]))
            elif len(parts) == 2:
                edges.append((int(parts[0]), int(parts[1])))
            else:
                raise ValueError("expected 'u v'")
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None
    isolated.extend(labels)
    return MultiGraph(edges=edges, vertices=isolated, labels=labels)


def emit_edge_list(g: MultiGraph) -> str:
    lines = []
    mentioned = set()
    for u, v in g.edges:
        lines.append(f"{u} {v}")
        mentioned.add(u)
        mentioned.add(v)
    for v in g.vertices:
        if v not in mentioned and v not in g.labels:
            lines.append(f"{v}")
    for v in sorted(g.labels):
        lines.append(f"label {v} {g.labels[v]}")
    return "\n".join(lines) + ("\n" if lines else "")
