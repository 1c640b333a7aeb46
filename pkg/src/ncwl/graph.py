"""Undirected simple labeled graphs: construction, parsing, and local structure.

The edge-list text format understood by :func:`parse_edge_list`:

* first data line: ``<node_count> <edge_count>``
* then ``edge_count`` lines ``<u> <v>`` with 0-based node ids
* optional label section: a line ``labels`` followed by ``node_count``
  lines ``<v> <label_id>``
* lines starting with ``#`` are comments; blank lines are ignored;
  LF and CRLF both accepted

Graphs are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    """Malformed edge-list input. ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with one non-negative integer label per node.

    Invariants (enforced by :meth:`build` and the parser):

    * adjacency lists are strictly increasing, so there are no self-loops
      and no parallel edges;
    * adjacency is symmetric and describes exactly ``edge_set``;
    * ``edge_set`` stores each edge once as ``(u, v)`` with ``u < v``.
    """

    node_count: int
    adjacency: tuple[tuple[int, ...], ...]
    edge_set: frozenset[tuple[int, int]]
    labels: tuple[int, ...]

    @classmethod
    def build(
        cls,
        node_count: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[int] | None = None,
    ) -> "Graph":
        if node_count < 0:
            raise ValueError("node_count must be non-negative")
        seen: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(node_count)]
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"edge ({u},{v}) out of range for {node_count} nodes")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({key[0]},{key[1]})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        if labels is None:
            labels = [0] * node_count
        else:
            labels = list(labels)
            if len(labels) != node_count:
                raise ValueError("labels length must equal node_count")
            if any(l < 0 for l in labels):
                raise ValueError("labels must be non-negative")
        return cls(
            node_count=node_count,
            adjacency=tuple(tuple(sorted(nb)) for nb in adj),
            edge_set=frozenset(seen),
            labels=tuple(labels),
        )

    @property
    def edge_count(self) -> int:
        return len(self.edge_set)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v, lexicographically sorted."""
        return sorted(self.edge_set)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_set


@dataclass(frozen=True)
class NeighborEdge:
    """An edge whose two endpoints are both neighbors of ``center``.

    ``endpoints`` is canonically oriented: ``endpoints[0] < endpoints[1]``.
    """

    center: int
    endpoints: tuple[int, int]


@dataclass(frozen=True)
class GraphStats:
    node_count: int
    edge_count: int
    triangle_count: int
    messages_nc_per_node: tuple[int, ...]
    avg_messages_nc: Fraction
    max_messages_nc: int
    max_degree: int
    memory_bound: int


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format described in the module docstring.

    Raises :class:`GraphFormatError` with a 1-based line number for malformed
    lines, self-loops, duplicate edges, and out-of-range node ids.
    """
    # (line_number, stripped_content) for non-comment, non-blank lines
    data: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        data.append((lineno, line))

    if not data:
        raise GraphFormatError("empty input: missing header line")

    pos = 0
    lineno, header = data[pos]
    pos += 1
    parts = header.split()
    if len(parts) != 2:
        raise GraphFormatError("header must be '<node_count> <edge_count>'", lineno)
    try:
        node_count, edge_count = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError("header must contain two integers", lineno) from None
    if node_count < 0 or edge_count < 0:
        raise GraphFormatError("header counts must be non-negative", lineno)

    seen: set[tuple[int, int]] = set()
    adj: list[list[int]] = [[] for _ in range(node_count)]
    for _ in range(edge_count):
        if pos >= len(data):
            raise GraphFormatError(
                f"expected {edge_count} edge lines, got {len(seen)}",
                data[-1][0] if data else None,
            )
        lineno, line = data[pos]
        pos += 1
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError("edge line must be '<u> <v>'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("edge line must contain two integers", lineno) from None
        if not (0 <= u < node_count and 0 <= v < node_count):
            raise GraphFormatError(
                f"node id out of range: edge ({u},{v}) with node_count={node_count}", lineno
            )
        if u == v:
            raise GraphFormatError(f"self-loop at node {u}", lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({key[0]},{key[1]})", lineno)
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)

    labels = [0] * node_count
    if pos < len(data):
        lineno, line = data[pos]
        pos += 1
        if line != "labels":
            raise GraphFormatError("expected 'labels' section or end of input", lineno)
        assigned = [False] * node_count
        for _ in range(node_count):
            if pos >= len(data):
                raise GraphFormatError(
                    f"label section must list all {node_count} nodes", data[-1][0]
                )
            lineno, line = data[pos]
            pos += 1
            parts = line.split()
            if len(parts) != 2:
                raise GraphFormatError("label line must be '<v> <label_id>'", lineno)
            try:
                v, lab = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError("label line must contain two integers", lineno) from None
            if not 0 <= v < node_count:
                raise GraphFormatError(f"node id out of range: {v}", lineno)
            if lab < 0:
                raise GraphFormatError("label id must be non-negative", lineno)
            if assigned[v]:
                raise GraphFormatError(f"duplicate label for node {v}", lineno)
            assigned[v] = True
            labels[v] = lab
        if pos < len(data):
            raise GraphFormatError("unexpected content after label section", data[pos][0])
    return Graph(
        node_count=node_count,
        adjacency=tuple(tuple(sorted(nb)) for nb in adj),
        edge_set=frozenset(seen),
        labels=tuple(labels),
    )


def serialize_edge_list(g: Graph) -> str:
    """Edge-list text for ``g``; ``parse_edge_list`` round-trips it exactly."""
    lines = [f"{g.node_count} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    if any(l != 0 for l in g.labels):
        lines.append("labels")
        lines.extend(f"{v} {lab}" for v, lab in enumerate(g.labels))
    return "\n".join(lines) + "\n"


def neighbor_edges(g: Graph, v: int) -> list[NeighborEdge]:
    """All edges with both endpoints in N(v), ascending by (u1, u2).

    Uses sorted-adjacency merge intersection: for each neighbor u1 of v, the
    common neighbors of u1 and v that are larger than u1 close an edge
    (u1, u2) inside N(v).
    """
    if not 0 <= v < g.node_count:
        raise ValueError(f"node id out of range: {v}")
    adj = g.adjacency
    nv = adj[v]
    out: list[NeighborEdge] = []
    for u1 in nv:
        a, b = adj[u1], nv
        i = j = 0
        la, lb = len(a), len(b)
        while i < la and j < lb:
            x, y = a[i], b[j]
            if x == y:
                if x > u1:
                    out.append(NeighborEdge(center=v, endpoints=(u1, x)))
                i += 1
                j += 1
            elif x < y:
                i += 1
            else:
                j += 1
    return out


def neighbor_edge_lists(g: Graph) -> list[list[tuple[int, int]]]:
    """For every node v, the (u1, u2) pairs of edges inside N(v).

    Single edge-centric pass: an edge (u1, u2) belongs to node w's list iff w
    is a common neighbor of u1 and u2 (i.e. they form a triangle). Iterating
    edges in sorted order leaves every per-node list ascending in (u1, u2).
    """
    adj = g.adjacency
    out: list[list[tuple[int, int]]] = [[] for _ in range(g.node_count)]
    for u1, u2 in g.edges():
        a, b = adj[u1], adj[u2]
        i = j = 0
        la, lb = len(a), len(b)
        pair = (u1, u2)
        while i < la and j < lb:
            x, y = a[i], b[j]
            if x == y:
                out[x].append(pair)
                i += 1
                j += 1
            elif x < y:
                i += 1
            else:
                j += 1
    return out


def stats(g: Graph) -> GraphStats:
    """Structural counts; each triangle contributes one pair to each corner."""
    per_node = tuple(len(p) for p in neighbor_edge_lists(g))
    total = sum(per_node)
    # total == 3 * triangle_count by construction
    triangles = total // 3
    n = g.node_count
    m = g.edge_count
    return GraphStats(
        node_count=n,
        edge_count=m,
        triangle_count=triangles,
        messages_nc_per_node=per_node,
        avg_messages_nc=Fraction(total, n) if n else Fraction(0),
        max_messages_nc=max(per_node, default=0),
        max_degree=max((len(nb) for nb in g.adjacency), default=0),
        memory_bound=min(m, 3 * triangles),
    )


def disjoint_union(g1: Graph, g2: Graph) -> tuple[Graph, int]:
    """Union with g2's node ids shifted by g1.node_count; returns (graph, offset)."""
    offset = g1.node_count
    edges = list(g1.edges())
    edges.extend((u + offset, v + offset) for u, v in g2.edges())
    labels = list(g1.labels) + list(g2.labels)
    return Graph.build(offset + g2.node_count, edges, labels), offset


def permute_graph(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel nodes: node v becomes perm[v]. ``perm`` must be a permutation."""
    if sorted(perm) != list(range(g.node_count)):
        raise ValueError("perm is not a permutation of the node ids")
    labels = [0] * g.node_count
    for v, lab in enumerate(g.labels):
        labels[perm[v]] = lab
    edges = [(perm[u], perm[v]) for u, v in g.edge_set]
    return Graph.build(g.node_count, edges, labels)


# Small named constructions used throughout the tests and the corpus.

def empty_graph(n: int, labels: Sequence[int] | None = None) -> Graph:
    return Graph.build(n, [], labels)


def path_graph(n: int, labels: Sequence[int] | None = None) -> Graph:
    return Graph.build(n, [(i, i + 1) for i in range(n - 1)], labels)


def cycle_graph(n: int, labels: Sequence[int] | None = None) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 nodes")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return Graph.build(n, edges, labels)


def complete_graph(n: int, labels: Sequence[int] | None = None) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Graph.build(n, edges, labels)


def star_graph(leaves: int, labels: Sequence[int] | None = None) -> Graph:
    return Graph.build(leaves + 1, [(0, i) for i in range(1, leaves + 1)], labels)


def wheel_graph(rim: int, labels: Sequence[int] | None = None) -> Graph:
    """Hub node 0 joined to every node of the cycle 1..rim."""
    if rim < 3:
        raise ValueError("wheel rim needs at least 3 nodes")
    edges = [(0, i) for i in range(1, rim + 1)]
    edges.extend((i, i + 1) for i in range(1, rim))
    edges.append((1, rim))
    return Graph.build(rim + 1, edges, labels)


def random_gnp(rng: random.Random, n: int, p: float, num_labels: int = 1) -> Graph:
    """Erdos-Renyi G(n, p) with labels drawn uniformly from range(num_labels)."""
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    labels = [rng.randrange(num_labels) for _ in range(n)] if num_labels > 1 else None
    return Graph.build(n, edges, labels)


def random_gnm(rng: random.Random, n: int, m: int, num_labels: int = 1) -> Graph:
    """Uniform random graph with exactly m distinct edges (m capped at C(n,2))."""
    limit = n * (n - 1) // 2
    m = min(m, limit)
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        chosen.add((u, v) if u < v else (v, u))
    labels = [rng.randrange(num_labels) for _ in range(n)] if num_labels > 1 else None
    return Graph.build(n, sorted(chosen), labels)
