"""Exact minimum genus, planarity, chord overlap, and maximum genus.

The minimum-genus solver assigns vertex rotations one vertex at a time in
BFS order from a maximum-degree vertex and tracks the partially traced
faces incrementally.  A partial assignment with f closed faces and m
undefined face-successor slots can complete to at most f + m faces, since
every face that is not yet closed must traverse at least one undefined
slot and faces are dart-disjoint.  The implied genus lower bound
ceil((beta + 1 - f - m) / 2) is therefore admissible and prunes the branch
whenever it reaches the best genus already found.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .embedding import DisconnectedGraphError, RotationSystem
from .multigraph import MultiGraph, _smooth_with_lift

DEFAULT_NODE_BUDGET = 10**8
DEFAULT_TREE_BUDGET = 10**6


class GenusSearchBudget(RuntimeError):
    """Search node budget exhausted; carries the best-known genus interval."""

    def __init__(self, lo: int, hi: int, nodes: int):
        super().__init__(f"node budget exhausted; genus is in [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.nodes = nodes


class InconclusiveSearchError(RuntimeError):
    """The deficiency search ended without proving optimality."""


@dataclass(frozen=True)
class GenusResult:
    genus: int
    witness: RotationSystem
    nodes_explored: int


@dataclass(frozen=True)
class XuongCertificate:
    tree_edges: frozenset
    deficiency: int
    max_genus: int
    optimal: bool = True


class _StopSearch(Exception):
    pass


class _TreeBudget(Exception):
    pass


def _require_connected(g: MultiGraph):
    if g.num_vertices == 0:
        raise DisconnectedGraphError("empty graph has no components")
    if not g.is_connected():
        raise DisconnectedGraphError(
            "graph is disconnected; compute per component and sum the genera"
        )


def _bfs_order(g: MultiGraph) -> list:
    root = max(g.vertices, key=lambda v: (g.degree(v), -v))
    order = [root]
    seen = {root}
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for d in g.darts_at(v):
            w = g.dart_owner(d ^ 1)
            if w not in seen:
                seen.add(w)
                order.append(w)
    return order


def _rotation_candidates(g, v, up_to_reflection):
    """Cyclic orders at v as arc lists; arc (u, w) sets face-successor of u to w."""
    darts = g.darts_at(v)
    if not darts:
        return [()], [()]
    first, rest = darts[0], darts[1:]
    out = []
    seqs = []
    for perm in itertools.permutations(rest):
        if up_to_reflection and len(perm) >= 2 and perm[::-1] < perm:
            continue
        seq = (first,) + perm
        seqs.append(seq)
        out.append(tuple((seq[i] ^ 1, seq[(i + 1) % len(seq)]) for i in range(len(seq))))
    return out, seqs


def _search(gs: MultiGraph, incumbent: int, node_budget: int, stop_at: int = 0):
    """Find the minimum genus of connected gs among values < incumbent.

    Returns (genus, rotations, nodes) or (None, None, nodes) when every
    rotation system has genus >= incumbent.
    """
    n_darts = gs.num_darts
    if n_darts == 0:
        if incumbent > 0:
            return 0, {v: () for v in gs.vertices}, 0
        return None, None, 0
    beta = gs.num_edges - gs.num_vertices + 1
    order = _bfs_order(gs)
    arcs_per_vertex = []
    seqs_per_vertex = []
    for i, v in enumerate(order):
        arcs, seqs = _rotation_candidates(gs, v, up_to_reflection=(i == 0))
        arcs_per_vertex.append(arcs)
        seqs_per_vertex.append(seqs)

    chain_start = list(range(n_darts))  # for a live tail t: head of its chain
    chain_end = list(range(n_darts))  # for a live head h: tail of its chain
    state = {"closed": 0, "defined": 0, "nodes": 0}
    best = {"genus": None, "choice": None}
    target_parity = (beta + 1) % 2

    def assign(arcs):
        ops = []
        closed = 0
        for u, w in arcs:
            s1 = chain_start[u]
            if s1 == w:
                closed += 1
                ops.append((None, None))
            else:
                t2 = chain_end[w]
                ops.append((s1, t2))
                chain_end[s1] = t2
                chain_start[t2] = s1
        state["closed"] += closed
        state["defined"] += len(arcs)
        return ops

    def undo(arcs, ops):
        closed = 0
        for (u, w), (s1, t2) in zip(reversed(arcs), reversed(ops)):
            if s1 is None:
                closed += 1
            else:
                chain_end[s1] = u
                chain_start[t2] = w
        state["closed"] -= closed
        state["defined"] -= len(arcs)

    choice = [0] * len(order)

    def descend(level):
        if level == len(order):
            genus = (beta + 1 - state["closed"]) // 2
            if best["genus"] is None or genus < best["genus"]:
                best["genus"] = genus
                best["choice"] = list(choice)
                if genus <= stop_at:
                    raise _StopSearch
            return
        for idx, arcs in enumerate(arcs_per_vertex[level]):
            state["nodes"] += 1
            if state["nodes"] > node_budget:
                lo = 0
                hi = best["genus"] if best["genus"] is not None else beta // 2
                raise GenusSearchBudget(lo, hi, state["nodes"])
            ops = assign(arcs)
            faces_ub = state["closed"] + (n_darts - state["defined"])
            if faces_ub % 2 != target_parity:
                faces_ub -= 1
            bound = beta + 1 - faces_ub
            limit = best["genus"] if best["genus"] is not None else incumbent
            if bound < 2 * limit:
                choice[level] = idx
                descend(level + 1)
            undo(arcs, ops)

    try:
        descend(0)
    except _StopSearch:
        pass
    if best["genus"] is None or best["genus"] >= incumbent:
        return None, None, state["nodes"]
    rotations = {
        v: seqs_per_vertex[i][best["choice"][i]] for i, v in enumerate(order)
    }
    return best["genus"], rotations, state["nodes"]


def _lift_rotations(g: MultiGraph, dart_lift: dict, rotations: dict) -> RotationSystem:
    """Carry a rotation system of the smoothed graph back to g."""
    lifted = {}
    for v, seq in rotations.items():
        lifted[v] = tuple(dart_lift[d] for d in seq)
    for v in g.vertices:
        if v not in lifted:
            lifted[v] = g.darts_at(v)  # suppressed or trivial: unique cyclic order
    return RotationSystem(g, lifted)


def min_genus(
    g: MultiGraph,
    upper_hint: int | None = None,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> GenusResult:
    """Exact minimum orientable genus with an embedding witness.

    The graph is smoothed first (suppressing 2-valent vertices changes
    neither the genus nor the embeddings) and the witness is lifted back to
    the input graph.  ``upper_hint`` seeds the pruning bound; a hint below
    the true genus costs a second unseeded pass but never changes the result.
    """
    _require_connected(g)
    gs, dart_lift = _smooth_with_lift(g)
    beta = gs.num_edges - gs.num_vertices + 1
    incumbent = beta // 2 + 1
    if upper_hint is not None and upper_hint >= 0:
        incumbent = min(incumbent, upper_hint + 1)
    genus, rotations, nodes = _search(gs, incumbent, node_budget)
    if genus is None and incumbent <= beta // 2:
        genus, rotations, extra = _search(gs, beta // 2 + 1, node_budget)
        nodes += extra
    assert genus is not None
    return GenusResult(genus, _lift_rotations(g, dart_lift, rotations), nodes)


def genus_at_most(
    g: MultiGraph, cap: int, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> GenusResult | None:
    """Exact genus when it is <= cap, else None (decided, not timed out)."""
    _require_connected(g)
    gs, dart_lift = _smooth_with_lift(g)
    beta = gs.num_edges - gs.num_vertices + 1
    incumbent = min(beta // 2, cap) + 1
    genus, rotations, nodes = _search(gs, incumbent, node_budget)
    if genus is None:
        return None
    return GenusResult(genus, _lift_rotations(g, dart_lift, rotations), nodes)


def is_planar(g: MultiGraph, *, node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """True iff the minimum genus is 0; disconnected input is checked
    component by component."""
    for comp in g.connected_components():
        sub = _component_subgraph(g, comp)
        if genus_at_most(sub, 0, node_budget=node_budget) is None:
            return False
    return True


def _component_subgraph(g: MultiGraph, comp: set) -> MultiGraph:
    edges = [e for e in g.edges if e[0] in comp]
    return MultiGraph(edges=edges, vertices=comp)


# -- chord overlap ---------------------------------------------------------

def chords_overlap(cycle, c1, c2, c3) -> bool:
    """True iff the three chords pairwise interleave on the cycle.

    Interleaving chords force a subdivided K(3,3) inside cycle-plus-chords,
    so True certifies nonplanarity.
    """
    pos = {v: i for i, v in enumerate(cycle)}
    chords = []
    for chord in (c1, c2, c3):
        u, v = chord
        if u not in pos or v not in pos:
            raise ValueError(f"chord endpoint not on the cycle: {chord}")
        if u == v:
            raise ValueError(f"chord endpoints coincide: {chord}")
        chords.append((pos[u], pos[v]))

    def interleaves(a, b):
        (x, y) = sorted(a)
        inside = lambda p: x < p < y
        return inside(b[0]) != inside(b[1]) and b[0] not in (x, y) and b[1] not in (x, y)

    return all(interleaves(a, b) for a, b in itertools.combinations(chords, 2))


# -- Xuong deficiency and maximum genus -------------------------------------

def _check_spanning_tree(g: MultiGraph, tree_edges) -> frozenset:
    tree = frozenset(tree_edges)
    for e in tree:
        g.edge_endpoints(e)
    if len(tree) != g.num_vertices - 1:
        raise ValueError("a spanning tree needs exactly |V| - 1 edges")
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in tree:
        u, v = g.edge_endpoints(e)
        ru, rv = find(u), find(v)
        if ru == rv:
            raise ValueError("tree edges contain a cycle")
        parent[ru] = rv
    if len({find(v) for v in g.vertices}) != 1:
        raise ValueError("tree edges do not span the graph")
    return tree


def deficiency_of_tree(g: MultiGraph, tree_edges) -> int:
    """Number of co-tree components carrying an odd number of edges.

    Loops never sit in a spanning tree; a loop is a co-tree edge in the
    component of its vertex (a lone loop is its own odd component).
    """
    tree = _check_spanning_tree(g, tree_edges)
    cotree = [e for e in range(g.num_edges) if e not in tree]
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in cotree:
        u, v = g.edge_endpoints(e)
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    counts = {}
    for e in cotree:
        root = find(g.edge_endpoints(e)[0])
        counts[root] = counts.get(root, 0) + 1
    deficiency = sum(1 for c in counts.values() if c % 2 == 1)
    beta = g.num_edges - g.num_vertices + 1
    assert deficiency % 2 == beta % 2
    return deficiency


def _random_spanning_tree(g: MultiGraph, rng: random.Random) -> set:
    edges = [e for e in range(g.num_edges) if not g.is_loop(e)]
    rng.shuffle(edges)
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = set()
    for e in edges:
        u, v = g.edge_endpoints(e)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.add(e)
    return tree


def _tree_path(g: MultiGraph, tree: set, a: int, b: int):
    """Edges of the unique a-b path in the tree."""
    adj = {}
    for e in tree:
        u, v = g.edge_endpoints(e)
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    prev = {a: (None, None)}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            break
        for y, e in adj.get(x, ()):
            if y not in prev:
                prev[y] = (x, e)
                stack.append(y)
    path = []
    x = b
    while prev[x][0] is not None:
        path.append(prev[x][1])
        x = prev[x][0]
    return path


def _enumerate_spanning_trees(g: MultiGraph, budget: int):
    """Yield spanning trees as edge-id sets; raises GenusSearchBudget past budget."""
    edges = [e for e in range(g.num_edges) if not g.is_loop(e)]
    n = g.num_vertices
    produced = [0]

    def connectable(chosen, start_idx):
        parent = {v: v for v in g.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(u, v):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                return True
            return False

        comps = len(g.vertices)
        for e in chosen:
            u, v = g.edge_endpoints(e)
            if union(u, v):
                comps -= 1
        for e in edges[start_idx:]:
            u, v = g.edge_endpoints(e)
            if union(u, v):
                comps -= 1
        return comps == 1

    def rec(idx, chosen, parent):
        if len(chosen) == n - 1:
            produced[0] += 1
            if produced[0] > budget:
                raise _TreeBudget
            yield set(chosen)
            return
        if idx == len(edges):
            return
        e = edges[idx]
        u, v = g.edge_endpoints(e)

        def find(x, p):
            while p[x] != x:
                p[x] = p[p[x]]
                x = p[x]
            return x

        ru, rv = find(u, parent), find(v, parent)
        if ru != rv:
            p2 = dict(parent)
            p2[ru] = rv
            yield from rec(idx + 1, chosen + [e], p2)
        if connectable(chosen, idx + 1):
            yield from rec(idx + 1, chosen, parent)

    yield from rec(0, [], {v: v for v in g.vertices})


def xuong_certificate_from_tree(g: MultiGraph, tree_edges) -> XuongCertificate:
    """Verify a caller-supplied spanning tree; optimal iff its deficiency
    is 0 or 1 (the deficiency of any tree has the parity of beta)."""
    _require_connected(g)
    tree = _check_spanning_tree(g, tree_edges)
    beta = g.num_edges - g.num_vertices + 1
    xi = deficiency_of_tree(g, tree)
    return XuongCertificate(
        tree_edges=tree,
        deficiency=xi,
        max_genus=(beta - xi) // 2,
        optimal=xi <= 1,
    )


def max_genus(
    g: MultiGraph,
    *,
    seed: int = 0,
    restarts: int = 16,
    tree_budget: int = DEFAULT_TREE_BUDGET,
    tree_edges=None,
) -> XuongCertificate:
    """Maximum genus via a minimum-deficiency spanning tree.

    Strategy: hill-climbing edge swaps from random spanning trees; a tree
    whose deficiency matches beta's parity (0 or 1) is a Xuong tree, since
    every tree's deficiency has that parity.  If local search stalls above
    parity, fall back to exhausting all spanning trees within the budget;
    past the budget the best certificate found is returned flagged
    non-optimal.
    """
    _require_connected(g)
    if tree_edges is not None:
        return xuong_certificate_from_tree(g, tree_edges)
    beta = g.num_edges - g.num_vertices + 1
    target = beta % 2
    rng = random.Random(seed)

    best_tree = None
    best_xi = None
    for _ in range(max(restarts, 1)):
        tree = _random_spanning_tree(g, rng)
        xi = deficiency_of_tree(g, tree)
        improved = True
        while improved and xi > target:
            improved = False
            co = [e for e in range(g.num_edges) if e not in tree and not g.is_loop(e)]
            rng.shuffle(co)
            for e in co:
                u, v = g.edge_endpoints(e)
                for f in _tree_path(g, tree, u, v):
                    cand = (tree - {f}) | {e}
                    cxi = deficiency_of_tree(g, cand)
                    if cxi < xi:
                        tree, xi = cand, cxi
                        improved = True
                        break
                if improved:
                    break
        if best_xi is None or xi < best_xi:
            best_tree, best_xi = tree, xi
        if best_xi == target:
            return XuongCertificate(
                tree_edges=frozenset(best_tree),
                deficiency=best_xi,
                max_genus=(beta - best_xi) // 2,
                optimal=True,
            )

    try:
        for tree in _enumerate_spanning_trees(g, tree_budget):
            xi = deficiency_of_tree(g, tree)
            if xi < best_xi:
                best_tree, best_xi = tree, xi
                if xi == target:
                    break
        return XuongCertificate(
            tree_edges=frozenset(best_tree),
            deficiency=best_xi,
            max_genus=(beta - best_xi) // 2,
            optimal=True,
        )
    except _TreeBudget:
        return XuongCertificate(
            tree_edges=frozenset(best_tree),
            deficiency=best_xi,
            max_genus=(beta - best_xi) // 2,
            optimal=False,
        )


def is_upper_embeddable(g: MultiGraph, *, seed: int = 0) -> bool:
    """True iff the maximum genus equals floor(beta / 2), i.e. deficiency <= 1."""
    cert = max_genus(g, seed=seed)
    if not cert.optimal:
        raise InconclusiveSearchError(
            "deficiency search was inconclusive within the tree budget"
        )
    return cert.deficiency <= 1
