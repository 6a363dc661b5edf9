"""Rotation systems, face tracing, and embedding genus.

A rotation system assigns each vertex a cyclic order of its darts and hence
determines a 2-cell embedding in an orientable surface.  Face orbits follow
the convention: from dart d, the next dart is the rotation successor of
partner(d) at partner(d)'s owner.  The mirror convention traces the same
faces reversed, so every genus below is convention-independent; a unit test
pins the convention on a labeled example.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

from .multigraph import MultiGraph

DEFAULT_ROTATION_BUDGET = 10**6


class DisconnectedGraphError(ValueError):
    """Face tracing needs a connected graph; callers split components."""


class RotationBudgetError(RuntimeError):
    """The requested enumeration exceeds the given budget."""


class InvalidMappingError(ValueError):
    """An edge-to-path table is not a homeomorphic embedding of the subgraph."""


def _canonical_cycle(seq):
    seq = tuple(seq)
    if not seq:
        return seq
    k = seq.index(min(seq))
    return seq[k:] + seq[:k]


class RotationSystem:
    """Per-vertex cyclic dart order; cycles are stored starting at their
    smallest dart id so equality and hashing are well-defined."""

    __slots__ = ("graph", "_rotations", "_succ")

    def __init__(self, graph: MultiGraph, rotations):
        self.graph = graph
        rots = {}
        succ = {}
        for v in graph.vertices:
            try:
                cyc = _canonical_cycle(rotations[v])
            except KeyError:
                raise ValueError(f"missing rotation for vertex {v}") from None
            if sorted(cyc) != sorted(graph.darts_at(v)):
                raise ValueError(f"rotation at {v} does not list its darts exactly once")
            rots[v] = cyc
            for i, d in enumerate(cyc):
                succ[d] = cyc[(i + 1) % len(cyc)]
        self._rotations = rots
        self._succ = succ

    @classmethod
    def sorted_order(cls, graph: MultiGraph) -> "RotationSystem":
        """The rotation listing darts in id order at every vertex."""
        return cls(graph, {v: graph.darts_at(v) for v in graph.vertices})

    def rotation(self, v) -> tuple:
        return self._rotations[v]

    def successor(self, d: int) -> int:
        return self._succ[d]

    def items(self):
        return self._rotations.items()

    def __eq__(self, other):
        if not isinstance(other, RotationSystem):
            return NotImplemented
        return self._rotations == other._rotations

    def __hash__(self):
        return hash(tuple(sorted(self._rotations.items())))

    def __repr__(self):
        return f"RotationSystem({self._rotations})"

    def to_text(self) -> str:
        lines = [
            f"{v}: {' '.join(str(d) for d in self._rotations[v])}"
            for v in self.graph.vertices
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, graph: MultiGraph, text: str) -> "RotationSystem":
        rots = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            head, _, tail = line.partition(":")
            rots[int(head)] = tuple(int(tok) for tok in tail.split())
        return cls(graph, rots)


@dataclass(frozen=True)
class FaceDecomposition:
    faces: tuple
    face_count: int
    genus: int


def trace_faces(g: MultiGraph, rot: RotationSystem) -> FaceDecomposition:
    """Face orbits and the Euler genus of the embedding (connected g only)."""
    if not g.is_connected():
        raise DisconnectedGraphError("face tracing requires a connected graph")
    if g.num_edges == 0:
        # a lone vertex sits on a sphere bounding one (empty) face
        return FaceDecomposition(faces=((),), face_count=1, genus=0)
    seen = [False] * g.num_darts
    faces = []
    for d0 in g.darts():
        if seen[d0]:
            continue
        face = []
        d = d0
        while not seen[d]:
            seen[d] = True
            face.append(d)
            d = rot.successor(d ^ 1)
        faces.append(_canonical_cycle(face))
    faces.sort()
    euler = g.num_vertices - g.num_edges + len(faces)
    assert (2 - euler) % 2 == 0 and euler <= 2
    return FaceDecomposition(faces=tuple(faces), face_count=len(faces), genus=(2 - euler) // 2)


def genus_of_embedding(g: MultiGraph, rot: RotationSystem) -> int:
    return trace_faces(g, rot).genus


def count_rotation_systems(g: MultiGraph) -> int:
    count = 1
    for v in g.vertices:
        count *= factorial(max(g.degree(v) - 1, 0))
    return count


def _vertex_orders(g, v, up_to_reflection=False):
    darts = g.darts_at(v)
    if len(darts) <= 1:
        yield darts
        return
    first, rest = darts[0], darts[1:]
    for perm in itertools.permutations(rest):
        if up_to_reflection and len(perm) >= 2 and perm[::-1] < perm:
            continue
        yield (first,) + perm


def enumerate_rotation_systems(
    g: MultiGraph,
    budget: int = DEFAULT_ROTATION_BUDGET,
    symmetry_vertex=None,
):
    """Yield every rotation system of g exactly once.

    With ``symmetry_vertex`` set to a vertex id, that vertex's cyclic orders
    are reduced up to reflection.  Reflecting all rotations preserves the
    face structure, so the reduced stream still ranges over every achievable
    genus; it is only valid when the caller uses the stream as a min/max
    oracle, hence full enumeration is the default.
    """
    count = count_rotation_systems(g)
    if symmetry_vertex is not None:
        d = g.degree(symmetry_vertex)
        if d >= 3:
            count //= 2
    if count > budget:
        raise RotationBudgetError(
            f"{count} rotation systems exceed the budget of {budget}"
        )
    verts = list(g.vertices)
    option_lists = [
        list(_vertex_orders(g, v, up_to_reflection=(v == symmetry_vertex)))
        for v in verts
    ]
    for combo in itertools.product(*option_lists):
        yield RotationSystem(g, dict(zip(verts, combo)))


def face_with_vertices(fd: FaceDecomposition, g: MultiGraph, targets) -> bool:
    """True iff one face's boundary walk visits every target vertex."""
    targets = set(targets)
    for v in targets:
        if not g.has_vertex(v):
            raise ValueError(f"target {v} is not a vertex of the graph")
    for face in fd.faces:
        if face == ():
            boundary = set(g.vertices)  # the empty face of an edgeless graph
        else:
            boundary = {g.dart_owner(d) for d in face}
        if targets <= boundary:
            return True
    return False


def induced_embedding(
    g: MultiGraph,
    rot: RotationSystem,
    sub: MultiGraph,
    edge_paths: dict,
) -> RotationSystem:
    """Restrict an embedding of g to a graph homeomorphic to a subgraph.

    ``edge_paths`` maps each edge id of ``sub`` to the dart walk in ``g``
    realizing it, directed from the image of the edge's first endpoint.
    The walks must be edge-disjoint and internally 2-valent in the image,
    i.e. they must form a subdivision of ``sub`` inside ``g``.
    """
    if set(edge_paths) != set(range(sub.num_edges)):
        raise InvalidMappingError("edge_paths must cover exactly the edges of sub")

    vertex_image = {}
    used_edges = set()
    internal = set()

    def bind(sub_v, g_v):
        if vertex_image.setdefault(sub_v, g_v) != g_v:
            raise InvalidMappingError(
                f"vertex {sub_v} maps to both {vertex_image[sub_v]} and {g_v}"
            )

    for e, path in edge_paths.items():
        path = tuple(path)
        if not path:
            raise InvalidMappingError(f"edge {e} maps to an empty walk")
        for d in path:
            if not 0 <= d < g.num_darts:
                raise InvalidMappingError(f"dart {d} does not exist in the host")
            if d >> 1 in used_edges:
                raise InvalidMappingError(f"host edge {d >> 1} is used twice")
            used_edges.add(d >> 1)
        for a, b in zip(path, path[1:]):
            mid = g.dart_owner(a ^ 1)
            if mid != g.dart_owner(b):
                raise InvalidMappingError(f"darts {a} and {b} do not chain")
            if mid in internal:
                raise InvalidMappingError(f"host vertex {mid} is interior to two walks")
            internal.add(mid)
        u, v = sub.edge_endpoints(e)
        bind(u, g.dart_owner(path[0]))
        bind(v, g.dart_owner(path[-1] ^ 1))

    images = list(vertex_image.values())
    if len(set(images)) != len(images):
        raise InvalidMappingError("vertex images are not distinct")
    if internal & set(images):
        raise InvalidMappingError("a walk passes through a branch vertex")

    # representative host dart for each sub dart
    rep = {}
    for e, path in edge_paths.items():
        path = tuple(path)
        rep[2 * e] = path[0]
        rep[2 * e + 1] = path[-1] ^ 1
    rotations = {}
    for w in sub.vertices:
        if w not in vertex_image:  # isolated sub vertex: nothing to induce
            if sub.degree(w) != 0:
                raise InvalidMappingError(f"sub vertex {w} has no image")
            rotations[w] = ()
            continue
        x = vertex_image[w]
        back = {}
        for s in sub.darts_at(w):
            r = rep[s]
            if g.dart_owner(r) != x:
                raise InvalidMappingError(f"walk for dart {s} does not start at {x}")
            back[r] = s
        if len(back) != sub.degree(w):
            raise InvalidMappingError(f"two darts at {w} share a host walk end")
        rotations[w] = tuple(back[r] for r in rot.rotation(x) if r in back)
    return RotationSystem(sub, rotations)
