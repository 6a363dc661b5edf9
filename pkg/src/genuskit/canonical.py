"""Canonical forms of simple graphs for isomorphism rejection.

Colors are refined iteratively by sorted neighbor-color multisets; when the
partition stays non-discrete, every vertex of the first non-singleton cell
is individualized in turn and the minimum adjacency encoding over all
resulting leaves is the certificate.  Branching over a whole cell keeps the
certificate isomorphism-invariant without automorphism pruning, which is
plenty fast at census sizes.
"""

from __future__ import annotations

from .graph6 import encode_graph6
from .multigraph import MultiGraph


def _refine(adj, colors):
    n = len(adj)
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in adj[v])))
            for v in range(n)
        ]
        palette = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [palette[sigs[v]] for v in range(n)]
        if new == colors:
            return colors
        colors = new


def _first_non_singleton(colors):
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    for c in sorted(cells):
        if len(cells[c]) > 1:
            return cells[c]
    return None


def _encode(adj, colors):
    n = len(adj)
    perm = [0] * n  # perm[old] = new position
    for new, old in enumerate(sorted(range(n), key=colors.__getitem__)):
        perm[old] = new
    edges = set()
    for v in range(n):
        for u in adj[v]:
            if v < u:
                edges.add((min(perm[v], perm[u]), max(perm[v], perm[u])))
    return encode_graph6(n, edges), perm


def _canonical(adj, colors, best):
    colors = _refine(adj, list(colors))
    cell = _first_non_singleton(colors)
    if cell is None:
        cert, perm = _encode(adj, colors)
        if best[0] is None or cert < best[0]:
            best[0] = cert
            best[1] = perm
        return
    for v in cell:
        branched = [c * 2 + (0 if u == v else 1) for u, c in enumerate(colors)]
        _canonical(adj, branched, best)


def _adjacency(g: MultiGraph):
    index = {v: i for i, v in enumerate(g.vertices)}
    adj = [[] for _ in g.vertices]
    for u, v in g.edges:
        if u == v:
            raise ValueError("canonical form is defined for simple graphs only")
        iu, iv = index[u], index[v]
        if iv in adj[iu]:
            raise ValueError("canonical form is defined for simple graphs only")
        adj[iu].append(iv)
        adj[iv].append(iu)
    return adj


def canonical_cert(g: MultiGraph) -> bytes:
    """Isomorphism-invariant certificate: the graph6 encoding of the
    canonically relabeled graph."""
    adj = _adjacency(g)
    if g.num_edges == 0:
        return encode_graph6(len(adj), ())
    best = [None, None]
    _canonical(adj, [0] * len(adj), best)
    return best[0]


def canonical_labeling(g: MultiGraph) -> dict:
    """Map each vertex id to its position under the canonical relabeling."""
    adj = _adjacency(g)
    if g.num_edges == 0:
        return {v: i for i, v in enumerate(g.vertices)}
    best = [None, None]
    _canonical(adj, [0] * len(adj), best)
    return {v: best[1][i] for i, v in enumerate(g.vertices)}


def are_isomorphic(g1: MultiGraph, g2: MultiGraph) -> bool:
    return canonical_cert(g1) == canonical_cert(g2)
