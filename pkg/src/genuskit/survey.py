"""Cubic-graph census: generation, ingestion, genus histogram, g(k) table.

The built-in generator enumerates connected cubic graphs by pairing off the
remaining edge slots of the smallest unsaturated vertex, introducing new
vertices in discovery order and forcing each vertex's neighbor choices to
ascend.  Every isomorphism class is reached (possibly through several
discovery labelings); canonical certificates keep exactly one.
"""

from __future__ import annotations

import concurrent.futures
import json
import time
from dataclasses import dataclass, field

from . import genus as genus_mod
from .canonical import canonical_cert
from .graph6 import Graph6Error, parse_graph6
from .multigraph import MultiGraph, _has_cutvertex, _is_triangle_free, invariants

GENERATOR_VERTEX_LIMIT = 14


class GeneratorLimitError(ValueError):
    """Request beyond the built-in generator's budget."""


@dataclass
class CensusReport:
    n: int
    source: str
    total: int
    genus_histogram: dict
    max_genus_seen: int | None
    genus_cap: int | None = None
    telemetry: dict = field(default_factory=dict)

    def to_json(self, deterministic: bool = False) -> str:
        data = {
            "n": self.n,
            "source": self.source,
            "total": self.total,
            "genus_histogram": {str(k): v for k, v in sorted(
                self.genus_histogram.items(), key=lambda kv: str(kv[0])
            )},
            "max_genus_seen": self.max_genus_seen,
            "genus_cap": self.genus_cap,
        }
        if not deterministic:
            data["telemetry"] = self.telemetry
        return json.dumps(data, sort_keys=True)


@dataclass(frozen=True)
class GkTable:
    """Upper bound on the smallest Betti number of a genus-k graph, per k,
    with the multiset of building blocks achieving it."""

    bounds: dict
    compositions: dict


def generate_cubic(
    n: int,
    *,
    triangle_free: bool = False,
    biconnected: bool = False,
    allow_large: bool = False,
):
    """Connected cubic graphs on n vertices, one per isomorphism class.

    The triangle-free filter prunes inside the search; 2-connectivity is a
    cheap post-filter.  n above 14 is refused unless ``allow_large`` opts in
    to an unbounded run (larger inputs normally arrive via ingest_graph6).
    """
    if n <= 0 or n % 2 != 0:
        raise GeneratorLimitError(f"cubic graphs need a positive even vertex count, not {n}")
    if n > GENERATOR_VERTEX_LIMIT and not allow_large:
        raise GeneratorLimitError(
            f"built-in generator is budgeted to n <= {GENERATOR_VERTEX_LIMIT}; "
            f"pass allow_large=True or ingest a graph6 file for n = {n}"
        )
    if n < 4:
        return

    adj = [set() for _ in range(n)]
    seen_certs = set()

    def candidates(v, count, lo):
        opts = []
        for u in range(lo, count):
            if u == v or u in adj[v] or len(adj[u]) >= 3:
                continue
            if triangle_free and adj[u] & adj[v]:
                continue
            opts.append(u)
        if count < n:
            opts.append(count)
        return opts

    def emit(count):
        edges = []
        for v in range(count):
            for u in adj[v]:
                if v < u:
                    edges.append((v, u))
        g = MultiGraph(edges=edges, vertices=range(count))
        if triangle_free and not _is_triangle_free(g):
            return None
        if biconnected and _has_cutvertex(g):
            return None
        cert = canonical_cert(g)
        if cert in seen_certs:
            return None
        seen_certs.add(cert)
        return g

    def search(count, lo):
        v = -1
        for w in range(count):
            if len(adj[w]) < 3:
                v = w
                break
        if v == -1:
            if count == n:
                g = emit(count)
                if g is not None:
                    yield g
            return
        for u in candidates(v, count, lo):
            new_count = count + 1 if u == count else count
            adj[v].add(u)
            adj[u].add(v)
            still_v = len(adj[v]) < 3
            yield from search(new_count, u + 1 if still_v else 0)
            adj[v].discard(u)
            adj[u].discard(v)

    yield from search(1, 0)


def ingest_graph6(path, errors: list | None = None, *, filters: bool = True):
    """Stream graphs from a graph6 file, one per line.

    Lines failing to parse or (with ``filters``) failing the census
    requirements (cubic, triangle-free, 2-connected) are recorded as
    ``(line_number, message)`` in ``errors`` and skipped, never silently
    dropped.
    """
    if errors is None:
        errors = []
    with open(path, "rb") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                g = parse_graph6(line)
            except Graph6Error as exc:
                errors.append((lineno, str(exc)))
                continue
            if filters:
                inv = invariants(g)
                if not inv.is_cubic:
                    errors.append((lineno, "not cubic"))
                    continue
                if not inv.is_triangle_free:
                    errors.append((lineno, "not triangle-free"))
                    continue
                if not inv.is_biconnected:
                    errors.append((lineno, "not 2-connected"))
                    continue
            yield g


def _graph_genus_task(args):
    edges, n, cap, node_budget = args
    g = MultiGraph(edges=edges, vertices=range(n))
    result = genus_mod.genus_at_most(g, cap, node_budget=node_budget)
    if result is None:
        return None
    return result.genus


def census(
    stream,
    genus_cap: int | None = None,
    *,
    node_budget: int = genus_mod.DEFAULT_NODE_BUDGET,
    jobs: int = 1,
    source: str = "stream",
    checkpoint_path=None,
    checkpoint_every: int = 10**4,
) -> CensusReport:
    """Histogram of exact minimum genus over a stream of cubic graphs.

    ``genus_cap`` stops refinement once genus <= cap is decided exactly;
    graphs above the cap land in the ">cap" bucket.  A checkpoint file
    records the resumable line-oriented progress of long runs.
    """
    histogram = {}
    total = 0
    nodes = 0
    start = time.monotonic()
    n_seen = None
    skip = 0
    if checkpoint_path is not None:
        skip, histogram, total, n_seen = _load_checkpoint(checkpoint_path)

    def record(genus_value):
        key = genus_value if genus_value is not None else f">{genus_cap}"
        histogram[key] = histogram.get(key, 0) + 1

    def checkpoint(index):
        if checkpoint_path is not None and index % checkpoint_every == 0:
            _save_checkpoint(checkpoint_path, index, histogram, total, n_seen)

    def tasks():
        nonlocal n_seen, total
        for i, g in enumerate(stream):
            if i < skip:
                continue
            if n_seen is None:
                n_seen = g.num_vertices
            elif g.num_vertices != n_seen:
                raise ValueError(
                    f"mixed vertex counts in census stream: {n_seen} then {g.num_vertices}"
                )
            cap = genus_cap
            if cap is None:
                beta = g.num_edges - g.num_vertices + 1
                cap = beta // 2
            yield i, (g.edges, g.num_vertices, cap, node_budget)

    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            indexed = list(tasks())
            for (i, _), result in zip(
                indexed, pool.map(_graph_genus_task, [t for _, t in indexed], chunksize=4)
            ):
                record(result)
                total += 1
                checkpoint(i + 1)
    else:
        for i, task in tasks():
            record(_graph_genus_task(task))
            total += 1
            checkpoint(i + 1)

    if checkpoint_path is not None:
        _save_checkpoint(checkpoint_path, -1, histogram, total, n_seen)
    exact = [k for k in histogram if isinstance(k, int)]
    report = CensusReport(
        n=n_seen if n_seen is not None else 0,
        source=source,
        total=total,
        genus_histogram=dict(histogram),
        max_genus_seen=max(exact) if exact else None,
        genus_cap=genus_cap,
        telemetry={"seconds": round(time.monotonic() - start, 3), "solver_nodes": nodes},
    )
    assert sum(report.genus_histogram.values()) == report.total
    return report


def _save_checkpoint(path, index, histogram, total, n_seen):
    state = {
        "next_index": index,
        "histogram": {str(k): v for k, v in histogram.items()},
        "total": total,
        "n": n_seen,
    }
    with open(path, "a") as fh:
        fh.write(json.dumps(state, sort_keys=True) + "\n")


def _load_checkpoint(path):
    last = None
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if line:
                    last = json.loads(line)
    except FileNotFoundError:
        return 0, {}, 0, None
    if last is None or last["next_index"] < 0:
        return 0, {}, 0, None
    histogram = {
        (int(k) if not k.startswith(">") else k): v
        for k, v in last["histogram"].items()
    }
    return last["next_index"], histogram, last["total"], last["n"]


def duke_check(report: CensusReport) -> bool:
    """True iff every counted cubic graph satisfies beta >= 4 * genus.

    For a cubic graph on n vertices beta = n/2 + 1.  A capped bucket can be
    judged only when genus > cap already forces a violation; otherwise the
    report is too coarse to decide and a ValueError is raised.
    """
    if report.total == 0:
        return True
    beta = report.n // 2 + 1
    for key, count in report.genus_histogram.items():
        if count == 0:
            continue
        if isinstance(key, int):
            if 4 * key > beta:
                return False
        else:
            cap = int(key[1:])
            if 4 * (cap + 1) > beta:
                return False
            raise ValueError(
                f"bucket {key!r} cannot decide beta >= 4*genus at beta={beta}; "
                "rerun with a higher genus cap"
            )
    return True


DEFAULT_BLOCK_SPECS = ("k33", "m4", "m5", "m6")


def compute_default_blocks(*, node_budget: int = genus_mod.DEFAULT_NODE_BUDGET, jobs: int = 1):
    """(name, betti, genus) triples for the standard composition blocks,
    with every number recomputed by the library's own solvers."""
    from . import scaffold as scaffold_mod
    from .multigraph import betti as betti_of

    blocks = []
    k33 = MultiGraph(edges=[(i, j) for i in range(3) for j in range(3, 6)])
    blocks.append(("k33", betti_of(k33), genus_mod.min_genus(k33, node_budget=node_budget).genus))
    for k in (4, 5, 6):
        host, t = scaffold_mod.milgram_graph(k)
        built = scaffold_mod.scaffold(host, t)
        blocks.append((
            f"m{k}",
            betti_of(built.graph),
            scaffold_mod.scaffold_genus(host, t, node_budget=node_budget, jobs=jobs),
        ))
    return blocks


def g_table(k_max: int, blocks=None) -> GkTable:
    """Best upper bound on g(k) reachable by bar-amalgamating the blocks.

    bound(k) = min over blocks (betti_b + bound(k - genus_b)), bound(0) = 0;
    Betti number and genus are both additive under bar-amalgamation.
    """
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    if blocks is None:
        blocks = compute_default_blocks()
    normalized = []
    for block in blocks:
        if len(block) == 3:
            name, b, gen = block
        else:
            b, gen = block
            name = f"block(b={b},g={gen})"
        if gen <= 0:
            raise ValueError(f"block {name} must have positive genus")
        normalized.append((name, b, gen))
    bounds = {0: 0}
    compositions = {0: ()}
    for k in range(1, k_max + 1):
        best = None
        best_comp = None
        for name, b, gen in normalized:
            if gen <= k and (k - gen) in bounds:
                cand = bounds[k - gen] + b
                if best is None or cand < best:
                    best = cand
                    best_comp = compositions[k - gen] + (name,)
        if best is not None:
            bounds[k] = best
            compositions[k] = tuple(sorted(best_comp))
    bounds.pop(0)
    compositions.pop(0)
    return GkTable(bounds=bounds, compositions=compositions)
