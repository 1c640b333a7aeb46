"""Color-refinement engines and pairwise graph comparison.

Three refinement families over a shared core:

* ``1wl``    -- node colors refined by (own color, multiset of neighbor colors);
* ``nc1wl``  -- additionally the multiset of color pairs for edges joining two
  neighbors of the node ("neighbor communication");
* ``2wl``/``3wl`` -- colors on ordered k-tuples of nodes, refined by the k
  multisets obtained by substituting each tuple position.

Hashing is realized as exact signature interning: every structured signature
is a canonical tuple (multisets sorted, pairs as (min, max)) used as a
dictionary key, so equal signatures get equal dense ids and distinct
signatures distinct ids -- injective by construction, no collisions to
analyze. A fresh interner per round yields dense ids 0..num_classes-1
assigned in first-appearance order over the fixed entity order; since
signatures embed the previous round's colors, reusing small ids across
rounds cannot merge classes.

Pairwise comparison interleaves the two graphs in one joint run (one
interner), comparing the color histograms before every refinement round and
reporting the first differing round, exactly as an isomorphism-test loop.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .graph import Graph, disjoint_union, neighbor_edge_lists

METHODS = ("1wl", "nc1wl", "2wl", "3wl")

#: Default node-count caps keeping the tuple universe at ~32k entities.
KWL_NODE_CAPS = {2: 181, 3: 32}

VERDICT_DISTINGUISHED = "distinguished"
VERDICT_NOT_DISTINGUISHED = "not-distinguished"

Histogram = tuple[tuple[int, int], ...]


class SignatureInterner:
    """Injective map from canonical signatures to dense color ids.

    Shared across both graphs of a joint run so equal signatures receive
    equal ids. Not thread-safe while interning.
    """

    __slots__ = ("table",)

    def __init__(self) -> None:
        self.table: dict = {}

    def intern(self, sig) -> int:
        table = self.table
        cid = table.get(sig)
        if cid is None:
            cid = len(table)
            table[sig] = cid
        return cid

    def __len__(self) -> int:
        return len(self.table)


@dataclass(frozen=True)
class Coloring:
    """Dense colors over a fixed entity order plus the class histogram."""

    colors: tuple[int, ...]
    num_classes: int
    histogram: Histogram

    @classmethod
    def from_colors(cls, colors: Sequence[int]) -> "Coloring":
        hist = tuple(sorted(Counter(colors).items()))
        return cls(tuple(colors), len(hist), hist)


@dataclass(frozen=True)
class RefinementReport:
    """Outcome of one joint comparison run.

    ``histograms[i]`` holds the two graphs' histograms at iteration i
    (iteration 0 is the initial coloring). When distinguished, the
    histograms differ exactly at ``distinguishing_iteration`` and agree at
    every earlier iteration.
    """

    method: str
    verdict: str
    iterations_run: int
    distinguishing_iteration: int | None
    histograms: tuple[tuple[Histogram, Histogram], ...]

    @property
    def distinguished(self) -> bool:
        return self.verdict == VERDICT_DISTINGUISHED


class _NodeUniverse:
    """Entities are the nodes of one graph; supports 1wl and nc1wl signatures."""

    def __init__(self, g: Graph, with_neighbor_edges: bool):
        self.graph = g
        self.size = g.node_count
        self._pairs = neighbor_edge_lists(g) if with_neighbor_edges else None

    def initial_signatures(self) -> list:
        return list(self.graph.labels)

    def iteration_signatures(self, colors: Sequence[int]) -> list:
        adj = self.graph.adjacency
        pairs = self._pairs
        out = []
        if pairs is None:
            for v in range(self.size):
                out.append((colors[v], tuple(sorted([colors[u] for u in adj[v]]))))
            return out
        for v in range(self.size):
            neigh = tuple(sorted([colors[u] for u in adj[v]]))
            pv = pairs[v]
            if pv:
                pc = sorted(
                    (colors[a], colors[b]) if colors[a] <= colors[b] else (colors[b], colors[a])
                    for a, b in pv
                )
                out.append((colors[v], neigh, tuple(pc)))
            else:
                out.append((colors[v], neigh, ()))
        return out


class _TupleUniverse:
    """Entities are all node_count**k ordered tuples in row-major order."""

    def __init__(self, g: Graph, k: int):
        self.graph = g
        self.k = k
        n = g.node_count
        self.size = n**k
        self._tuples = list(product(range(n), repeat=k))
        self._strides = [n ** (k - 1 - i) for i in range(k)]

    def initial_signatures(self) -> list:
        """Atomic types: position labels, pairwise adjacency, equality pattern.

        Tuples with repeated nodes must not be conflated with adjacent pairs,
        hence the three-way code per position pair.
        """
        g = self.graph
        labels = g.labels
        eset = g.edge_set
        k = self.k
        sigs = []
        for tup in self._tuples:
            lab = tuple(labels[v] for v in tup)
            pat = []
            for i in range(k):
                vi = tup[i]
                for j in range(i + 1, k):
                    vj = tup[j]
                    if vi == vj:
                        pat.append(2)
                    elif ((vi, vj) if vi < vj else (vj, vi)) in eset:
                        pat.append(1)
                    else:
                        pat.append(0)
            sigs.append((lab, tuple(pat)))
        return sigs

    def iteration_signatures(self, colors: Sequence[int]) -> list:
        n = self.graph.node_count
        k = self.k
        strides = self._strides
        if not isinstance(colors, list):
            colors = list(colors)
        out = []
        for idx, tup in enumerate(self._tuples):
            sig = [colors[idx]]
            for i in range(k):
                st = strides[i]
                base = idx - tup[i] * st
                sig.append(tuple(sorted(colors[base : base + n * st : st])))
            out.append(tuple(sig))
        return out


def _intern_round(universes, colors: list[int] | None) -> list[int]:
    """One synchronized round over all universes with a fresh shared interner."""
    interner = SignatureInterner()
    new: list[int] = []
    if colors is None:
        for u in universes:
            new.extend(interner.intern(s) for s in u.initial_signatures())
        return new
    off = 0
    for u in universes:
        part = colors[off : off + u.size]
        new.extend(interner.intern(s) for s in u.iteration_signatures(part))
        off += u.size
    return new


def _refine_to_convergence(universes) -> list[list[int]]:
    """Dense color arrays per iteration, ending with the first repeated partition.

    Dense ids are assigned by first appearance in entity order, which makes
    two equal partitions literally equal as arrays; convergence is therefore
    plain array equality. The number of rounds is bounded by the entity
    count since every non-final round strictly splits some class.
    """
    colors = _intern_round(universes, None)
    rounds = [colors]
    total = len(colors)
    for _ in range(total):
        new = _intern_round(universes, colors)
        rounds.append(new)
        if new == colors:
            break
        colors = new
    return rounds


def _check_kwl_args(k: int, node_cap: int | None, *graphs: Graph) -> int:
    if k not in (2, 3):
        raise ValueError(f"k must be 2 or 3, got {k}")
    cap = KWL_NODE_CAPS[k] if node_cap is None else node_cap
    for g in graphs:
        if g.node_count > cap:
            raise ValueError(
                f"node count {g.node_count} exceeds the {k}-tuple cap of {cap} nodes"
            )
    return cap


def refine_1wl(g: Graph) -> list[Coloring]:
    """Per-iteration colorings (initial included) until the partition stabilizes."""
    rounds = _refine_to_convergence([_NodeUniverse(g, with_neighbor_edges=False)])
    return [Coloring.from_colors(c) for c in rounds]


def refine_nc1wl(g: Graph) -> list[Coloring]:
    """Like :func:`refine_1wl` with the neighbor-edge color-pair multiset added.

    On triangle-free graphs every pair multiset is empty, so the produced
    coloring sequence coincides with the plain one.
    """
    rounds = _refine_to_convergence([_NodeUniverse(g, with_neighbor_edges=True)])
    return [Coloring.from_colors(c) for c in rounds]


def refine_kwl(g: Graph, k: int, node_cap: int | None = None) -> list[Coloring]:
    """Refinement over ordered k-tuples, k in {2, 3}.

    Colors are reported over all node_count**k tuples in row-major order.
    Raises ValueError when the node count exceeds the cap (default
    ``KWL_NODE_CAPS[k]``).
    """
    _check_kwl_args(k, node_cap, g)
    rounds = _refine_to_convergence([_TupleUniverse(g, k)])
    return [Coloring.from_colors(c) for c in rounds]


def refine(g: Graph, method: str, node_cap: int | None = None) -> list[Coloring]:
    """Dispatch by method id ('1wl', 'nc1wl', '2wl', '3wl')."""
    if method == "1wl":
        return refine_1wl(g)
    if method == "nc1wl":
        return refine_nc1wl(g)
    if method in ("2wl", "3wl"):
        return refine_kwl(g, int(method[0]), node_cap)
    raise ValueError(f"unknown method {method!r}")


def _split_histograms(colors: list[int], split: int) -> tuple[Histogram, Histogram]:
    h1 = tuple(sorted(Counter(colors[:split]).items()))
    h2 = tuple(sorted(Counter(colors[split:]).items()))
    return h1, h2


def compare(g1: Graph, g2: Graph, method: str, node_cap: int | None = None) -> RefinementReport:
    """Joint refinement of two graphs with the verdict of the first histogram gap.

    The node methods run on the disjoint union (one shared interner by
    construction); the tuple methods keep separate tuple universes but share
    the interner. Histograms are compared before every refinement round, so
    graphs with different node counts are distinguished at iteration 0.
    """
    if method in ("1wl", "nc1wl"):
        union, _ = disjoint_union(g1, g2)
        universes = [_NodeUniverse(union, with_neighbor_edges=(method == "nc1wl"))]
        split = g1.node_count
    elif method in ("2wl", "3wl"):
        k = int(method[0])
        _check_kwl_args(k, node_cap, g1, g2)
        universes = [_TupleUniverse(g1, k), _TupleUniverse(g2, k)]
        split = g1.node_count**k
    else:
        raise ValueError(f"unknown method {method!r}")

    colors = _intern_round(universes, None)
    pair = _split_histograms(colors, split)
    hists = [pair]
    if pair[0] != pair[1]:
        return RefinementReport(method, VERDICT_DISTINGUISHED, 0, 0, tuple(hists))
    total = len(colors)
    if total == 0:
        return RefinementReport(method, VERDICT_NOT_DISTINGUISHED, 0, None, tuple(hists))
    for it in range(1, total + 1):
        new = _intern_round(universes, colors)
        pair = _split_histograms(new, split)
        hists.append(pair)
        if pair[0] != pair[1]:
            return RefinementReport(method, VERDICT_DISTINGUISHED, it, it, tuple(hists))
        if new == colors:
            return RefinementReport(method, VERDICT_NOT_DISTINGUISHED, it, None, tuple(hists))
        colors = new
    raise AssertionError("refinement failed to stabilize within the entity bound")


def brute_force_isomorphic(g1: Graph, g2: Graph, node_cap: int = 10) -> bool:
    """Exhaustive label- and edge-preserving bijection search.

    Backtracks over candidate images pruned by label and degree; intended as
    an independent oracle for small graphs. Raises ValueError above
    ``node_cap`` nodes.
    """
    if max(g1.node_count, g2.node_count) > node_cap:
        raise ValueError(f"node count exceeds the brute-force cap of {node_cap}")
    n = g1.node_count
    if n != g2.node_count:
        return False
    if sorted(g1.labels) != sorted(g2.labels):
        return False
    if sorted(map(len, g1.adjacency)) != sorted(map(len, g2.adjacency)):
        return False

    candidates = [
        [
            p
            for p in range(n)
            if g2.labels[p] == g1.labels[v] and len(g2.adjacency[p]) == len(g1.adjacency[v])
        ]
        for v in range(n)
    ]
    mapping = [-1] * n
    used = [False] * n
    e1, e2 = g1.edge_set, g2.edge_set

    def extend(v: int) -> bool:
        if v == n:
            return True
        for p in candidates[v]:
            if used[p]:
                continue
            ok = True
            for u in range(v):
                a = ((u, v) if u < v else (v, u)) in e1
                q = mapping[u]
                b = ((q, p) if q < p else (p, q)) in e2
                if a != b:
                    ok = False
                    break
            if ok:
                mapping[v] = p
                used[p] = True
                if extend(v + 1):
                    return True
                used[p] = False
                mapping[v] = -1
        return False

    return extend(0)
