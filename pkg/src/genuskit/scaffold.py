"""Scaffolded graphs: attaching non-outside gadgets to 2-valent triples.

The gadget H3 is K(2,3) with a pendant vertex on each 2-valent vertex; its
pendant vertices (free nodes) are identified with a triple of 2-valent host
vertices, raising the genus by exactly one per copy.  The genus of the
scaffolded graph equals n plus the minimum genus over the 3^n chordings
that replace each gadget by one edge inside its triple, which is what the
solver verifies numerically.
"""

from __future__ import annotations

import concurrent.futures
import itertools
from dataclasses import dataclass

from . import genus as genus_mod
from .multigraph import MultiGraph, subdivide

PAIR_NAMES = ("ab", "ac", "bc")
_PAIR_PICKS = ((0, 1), (0, 2), (1, 2))


class ScaffoldError(ValueError):
    """A triple is unusable: vertex missing, not 2-valent, or reused."""


@dataclass(frozen=True)
class TripleSet:
    """Unordered triples of distinct 2-valent host vertices, pairwise disjoint."""

    triples: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "triples", tuple(tuple(t) for t in self.triples)
        )

    def __len__(self):
        return len(self.triples)

    def validate(self, host: MultiGraph) -> None:
        seen = set()
        for t in self.triples:
            if len(t) != 3 or len(set(t)) != 3:
                raise ScaffoldError(f"not a triple of distinct vertices: {t}")
            for v in t:
                if not host.has_vertex(v):
                    raise ScaffoldError(f"triple vertex {v} is not in the host")
                if host.degree(v) != 2:
                    raise ScaffoldError(
                        f"triple vertex {v} has degree {host.degree(v)}, not 2"
                    )
                if v in seen:
                    raise ScaffoldError(f"triple vertex {v} is reused")
                seen.add(v)


@dataclass(frozen=True)
class H3Copy:
    """Bookkeeping for one attached gadget.

    ``mids[i]`` is the middle vertex joined to ``triple[i]`` by
    ``free_edge_ids[i]``; ``internal_edge_ids`` hold the six hub-middle
    edges in the order (h1m1, h1m2, h1m3, h2m1, h2m2, h2m3).
    """

    triple: tuple
    hubs: tuple
    mids: tuple
    internal_edge_ids: tuple
    free_edge_ids: tuple


@dataclass(frozen=True)
class ScaffoldResult:
    graph: MultiGraph
    copies: tuple


@dataclass(frozen=True)
class ChordAssignment:
    """One chord per triple; pair_indices picks ab=0, ac=1, bc=2."""

    pair_indices: tuple
    chords: tuple


def build_h3() -> MultiGraph:
    """The pendant-augmented K(2,3): hubs 0-1, middles 2-4, free nodes 5-7."""
    edges = [
        (0, 2), (0, 3), (0, 4),
        (1, 2), (1, 3), (1, 4),
        (2, 5), (3, 6), (4, 7),
    ]
    labels = {
        0: "hub0", 1: "hub1",
        2: "mid0", 3: "mid1", 4: "mid2",
        5: "free0", 6: "free1", 7: "free2",
    }
    return MultiGraph(edges=edges, labels=labels)


def h3_free_nodes(h3: MultiGraph) -> tuple:
    return tuple(h3.vertex_by_label(f"free{i}") for i in range(3))


def scaffold(host: MultiGraph, t: TripleSet) -> ScaffoldResult:
    """Attach one H3 per triple, identifying free nodes with the triple.

    Host vertex and edge ids are preserved; each copy adds five fresh
    vertices (two hubs, three middles) and nine edges.
    """
    t.validate(host)
    edges = list(host.edges)
    labels = host.labels
    next_id = (max(host.vertices) + 1) if host.vertices else 0
    copies = []
    for i, triple in enumerate(t.triples):
        h1, h2 = next_id, next_id + 1
        mids = (next_id + 2, next_id + 3, next_id + 4)
        next_id += 5
        internal_ids = []
        for hub in (h1, h2):
            for m in mids:
                internal_ids.append(len(edges))
                edges.append((hub, m))
        free_ids = []
        for m, host_v in zip(mids, triple):
            free_ids.append(len(edges))
            edges.append((m, host_v))
        labels[h1] = f"t{i}_hub0"
        labels[h2] = f"t{i}_hub1"
        for j, m in enumerate(mids):
            labels[m] = f"t{i}_mid{j}"
        copies.append(
            H3Copy(
                triple=tuple(triple),
                hubs=(h1, h2),
                mids=mids,
                internal_edge_ids=tuple(internal_ids),
                free_edge_ids=tuple(free_ids),
            )
        )
    graph = MultiGraph(edges=edges, vertices=host.vertices, labels=labels)
    return ScaffoldResult(graph=graph, copies=tuple(copies))


def enumerate_chordings(host: MultiGraph, t: TripleSet):
    """All 3^n ways to add one chord inside each triple, in lexicographic
    order over (triple index, pair index) with ab < ac < bc."""
    t.validate(host)
    n = len(t)
    for picks in itertools.product(range(3), repeat=n):
        chords = []
        for triple, p in zip(t.triples, picks):
            i, j = _PAIR_PICKS[p]
            chords.append((triple[i], triple[j]))
        graph = MultiGraph(
            edges=list(host.edges) + chords,
            vertices=host.vertices,
            labels=host.labels,
        )
        yield ChordAssignment(pair_indices=picks, chords=tuple(chords)), graph


def _chording_genus(args):
    edges, vertices, node_budget = args
    g = MultiGraph(edges=edges, vertices=vertices)
    return genus_mod.min_genus(g, node_budget=node_budget).genus


def gamma_T(
    host: MultiGraph,
    t: TripleSet,
    *,
    node_budget: int = genus_mod.DEFAULT_NODE_BUDGET,
    jobs: int = 1,
) -> int:
    """Minimum genus over the chording family S(host, t)."""
    tasks = [
        (g.edges, g.vertices, node_budget)
        for _, g in enumerate_chordings(host, t)
    ]
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            return min(pool.map(_chording_genus, tasks, chunksize=8))
    return min(_chording_genus(task) for task in tasks)


def scaffold_genus(
    host: MultiGraph,
    t: TripleSet,
    *,
    node_budget: int = genus_mod.DEFAULT_NODE_BUDGET,
    jobs: int = 1,
) -> int:
    """Exact genus of scaffold(host, t).graph: gamma_T plus one per triple."""
    return gamma_T(host, t, node_budget=node_budget, jobs=jobs) + len(t)


def extend_xuong_tree(host: MultiGraph, host_tree, s: ScaffoldResult) -> frozenset:
    """Grow a spanning tree of the host into one of the scaffolded graph.

    Per copy the three free edges plus the two outer hub-middle edges are
    added; the four remaining hub-middle edges form one new co-tree
    component with an even edge count, so the deficiency of the extended
    tree equals the host tree's deficiency.
    """
    tree = set(genus_mod._check_spanning_tree(host, host_tree))
    for copy in s.copies:
        tree.update(copy.free_edge_ids)
        tree.add(copy.internal_edge_ids[0])  # hub1 - mid1
        tree.add(copy.internal_edge_ids[5])  # hub2 - mid3
    result = frozenset(tree)
    genus_mod._check_spanning_tree(s.graph, result)
    return result


# -- named hosts -------------------------------------------------------------

def cycle_graph(n: int) -> MultiGraph:
    return MultiGraph(edges=[(i, (i + 1) % n) for i in range(n)])


def milgram_graph(k: int):
    """Host graph and triples whose scaffold is the genus-k member of the
    cubic counterexample family (k in {4, 5, 6})."""
    if k == 6:
        labels = {}
        for i in range(5):
            labels[i] = f"a{i}"
            labels[5 + i] = f"b{i}"
            labels[10 + i] = f"c{i}"
        host = MultiGraph(
            edges=[(i, (i + 1) % 15) for i in range(15)], labels=labels
        )
        triples = TripleSet(tuple((i, 5 + i, 10 + i) for i in range(5)))
        return host, triples
    if k == 5:
        base, t6 = milgram_graph(6)
        host = MultiGraph(
            edges=list(base.edges) + [(0, 5)],  # chord a0-b0
            labels=base.labels,
        )
        return host, TripleSet(t6.triples[1:])
    if k == 4:
        # 13-cycle c1 c2 d0 a0 a1 a2 d1 d2 b0 b1 b2 d3 c0 with the two
        # interleaving chords d0-d2 and d1-d3
        names = ["c1", "c2", "d0", "a0", "a1", "a2", "d1",
                 "d2", "b0", "b1", "b2", "d3", "c0"]
        labels = dict(enumerate(names))
        edges = [(i, (i + 1) % 13) for i in range(13)] + [(2, 7), (6, 11)]
        host = MultiGraph(edges=edges, labels=labels)
        triples = TripleSet(((3, 8, 12), (4, 9, 0), (5, 10, 1)))
        return host, triples
    raise ValueError(f"k must be 4, 5, or 6, not {k}")


def build_milgram(k: int) -> ScaffoldResult:
    host, t = milgram_graph(k)
    return scaffold(host, t)


def w5_subdivided():
    """The 5-spoke wheel with two spokes and one rim edge subdivided; the
    three subdivision vertices (labeled a, b, c) share no face pairwise."""
    hub = 0
    rim = [1, 2, 3, 4, 5]
    edges = [(hub, v) for v in rim] + [
        (rim[i], rim[(i + 1) % 5]) for i in range(5)
    ]
    g = MultiGraph(edges=edges)
    g = subdivide(g, (0, 3), 1)  # vertex 6 on the spoke to v2
    g = subdivide(g, (0, 1), 1)  # vertex 7 on the spoke to v0
    g = subdivide(g, (4, 5), 1)  # vertex 8 on the rim edge v3-v4
    host = MultiGraph(
        edges=g.edges, vertices=g.vertices, labels={6: "a", 7: "b", 8: "c"}
    )
    return host, TripleSet(((6, 7, 8),))
