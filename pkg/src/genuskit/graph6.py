"""graph6 encoding of simple graphs (bit-exact, header optional).

Layout: N(n) is one byte n+63 for n <= 62, else 126 followed by three bytes
encoding n in big-endian 6-bit groups; then R(x) packs the upper triangle
x = a(0,1) a(0,2) a(1,2) a(0,3) ... column by column into big-endian 6-bit
groups, zero-padded, each group offset by 63.
"""

from __future__ import annotations

from .multigraph import MultiGraph

HEADER = b">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the byte offset of the defect."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class UnsupportedGraphError(ValueError):
    """The graph cannot be represented in graph6 (loops or parallel edges)."""


def parse_graph6(data) -> MultiGraph:
    """Decode one graph6 line into a simple MultiGraph on vertices 0..n-1."""
    if isinstance(data, str):
        data = data.encode("ascii")
    base = 0
    if data.startswith(HEADER):
        data = data[len(HEADER):]
        base = len(HEADER)
    data = data.rstrip(b"\r\n")
    if not data:
        raise Graph6Error("empty input", base)
    pos = 0
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6Error("graphs beyond 2^18 vertices are not supported", base + 1)
        if len(data) < 4:
            raise Graph6Error("truncated vertex count", base + len(data))
        n = 0
        for i in range(1, 4):
            b = data[i] - 63
            if not 0 <= b <= 63:
                raise Graph6Error("vertex-count byte out of range", base + i)
            n = (n << 6) | b
        pos = 4
    else:
        n = data[0] - 63
        if not 0 <= n <= 62:
            raise Graph6Error("vertex-count byte out of range", base)
        pos = 1
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nbytes:
        raise Graph6Error(
            f"truncated adjacency data: need {nbytes} bytes, have {len(body)}",
            base + len(data),
        )
    if len(body) > nbytes:
        raise Graph6Error("trailing bytes after adjacency data", base + pos + nbytes)
    bits = []
    for i, byte in enumerate(body):
        val = byte - 63
        if not 0 <= val <= 63:
            raise Graph6Error("adjacency byte out of range", base + pos + i)
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits", base + pos + nbytes - 1)
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return MultiGraph(edges=edges, vertices=range(n))


def encode_graph6(n: int, edges) -> bytes:
    """Encode a simple graph given as (n, iterable of 0-based pairs)."""
    if n > 258047:
        raise UnsupportedGraphError("graph6 output limited to 258047 vertices")
    adj = set()
    for u, v in edges:
        if u == v:
            raise UnsupportedGraphError("graph6 cannot encode loops")
        key = (min(u, v), max(u, v))
        if key in adj:
            raise UnsupportedGraphError("graph6 cannot encode parallel edges")
        adj.add(key)
    if n <= 62:
        out = [n + 63]
    else:
        out = [126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    acc = 0
    filled = 0
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | ((i, j) in adj)
            filled += 1
            if filled == 6:
                out.append(acc + 63)
                acc = 0
                filled = 0
    if filled:
        out.append((acc << (6 - filled)) + 63)
    return bytes(out)


def emit_graph6(g: MultiGraph) -> bytes:
    """Encode a simple MultiGraph; vertex ids map to positions in sorted order."""
    index = {v: i for i, v in enumerate(g.vertices)}
    return encode_graph6(g.num_vertices, ((index[u], index[v]) for u, v in g.edges))
