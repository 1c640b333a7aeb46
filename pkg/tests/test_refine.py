from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncwl import (
    METHODS,
    Graph,
    brute_force_isomorphic,
    complete_graph,
    compare,
    cycle_graph,
    disjoint_union,
    path_graph,
    permute_graph,
    random_gnp,
    refine,
    refine_1wl,
    refine_kwl,
    refine_nc1wl,
    star_graph,
)

from conftest import graphs


def classes_of(coloring):
    """Partition as a set of frozensets of entity ids."""
    by_color: dict[int, set[int]] = {}
    for v, c in enumerate(coloring.colors):
        by_color.setdefault(c, set()).add(v)
    return {frozenset(s) for s in by_color.values()}


def two_triangles() -> Graph:
    g, _ = disjoint_union(complete_graph(3), complete_graph(3))
    return g


def two_squares() -> Graph:
    g, _ = disjoint_union(cycle_graph(4), cycle_graph(4))
    return g


class TestRefine1wl:
    def test_c6_converges_immediately(self):
        seq = refine_1wl(cycle_graph(6))
        assert [c.num_classes for c in seq] == [1, 1]

    def test_p3_splits_endpoints_from_middle(self):
        seq = refine_1wl(path_graph(3))
        assert [c.num_classes for c in seq] == [1, 2, 2]
        final = seq[-1].colors
        assert final[0] == final[2] != final[1]

    def test_star_splits_hub_from_leaves(self):
        seq = refine_1wl(star_graph(3))
        assert [c.num_classes for c in seq] == [1, 2, 2]
        final = seq[-1].colors
        assert final[1] == final[2] == final[3] != final[0]

    def test_initial_coloring_follows_labels(self):
        g = path_graph(3, [7, 7, 9])
        first = refine_1wl(g)[0]
        assert first.colors[0] == first.colors[1] != first.colors[2]

    def test_empty_graph(self):
        seq = refine_1wl(Graph.build(0, []))
        assert len(seq) == 1
        assert seq[0].num_classes == 0

    @given(graphs(max_nodes=10, max_labels=2))
    @settings(max_examples=80)
    def test_iteration_bound_and_density(self, g):
        seq = refine_1wl(g)
        assert len(seq) - 1 <= max(1, g.node_count)
        for coloring in seq:
            assert sorted(set(coloring.colors)) == list(range(coloring.num_classes))
            assert sum(k for _, k in coloring.histogram) == g.node_count


class TestRefineNc1wl:
    @given(graphs(max_nodes=10))
    @settings(max_examples=60)
    def test_triangle_free_degenerates_to_plain(self, g):
        # strip one edge from every triangle to make the graph triangle-free
        edges = set(g.edge_set)
        for a, b in sorted(edges):
            for w in range(g.node_count):
                if w != a and w != b and g.has_edge(a, w) and g.has_edge(b, w):
                    edges.discard((a, b))
        tf = Graph.build(g.node_count, sorted(edges), g.labels)
        plain = refine_1wl(tf)
        nc = refine_nc1wl(tf)
        assert [c.colors for c in plain] == [c.colors for c in nc]

    def test_triangle_plus_cycle_splits_in_one_round(self):
        g, _ = disjoint_union(complete_graph(3), cycle_graph(6))
        seq = refine_nc1wl(g)
        assert seq[1].num_classes == 2
        final = seq[-1].colors
        assert len({final[v] for v in range(3)}) == 1
        assert len({final[v] for v in range(3, 9)}) == 1
        assert final[0] != final[3]

    def test_execution_pair_snapshots(self):
        # hexagon vs two triangles: plain refinement never splits the joint
        # run, the neighbor-edge variant separates the graphs in round one
        union, _ = disjoint_union(cycle_graph(6), two_triangles())
        plain = refine_1wl(union)
        assert [c.num_classes for c in plain] == [1, 1]
        nc = refine_nc1wl(union)
        assert [c.num_classes for c in nc] == [1, 2, 2]
        final = nc[-1].colors
        assert len(set(final[:6])) == 1
        assert len(set(final[6:])) == 1
        assert final[0] != final[6]


class TestRefineKwl:
    def test_k2_pairs_atomic_types(self):
        seq = refine_kwl(complete_graph(2), 2)
        first = seq[0]
        assert first.num_classes == 2
        colors = first.colors  # row-major: (0,0), (0,1), (1,0), (1,1)
        assert colors[0] == colors[3]
        assert colors[1] == colors[2]
        assert colors[0] != colors[1]
        assert seq[-1].num_classes == 2

    def test_row_major_size(self):
        seq = refine_kwl(path_graph(3), 3)
        assert len(seq[0].colors) == 27

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError, match="k must be 2 or 3"):
            refine_kwl(path_graph(2), 4)

    def test_cap_enforced(self):
        g = Graph.build(33, [])
        with pytest.raises(ValueError, match="cap"):
            refine_kwl(g, 3)
        refine_kwl(g, 3, node_cap=33)  # explicit override

    @pytest.mark.parametrize("k", [2, 3])
    def test_monotone_refinement(self, k):
        rng = random.Random(f"kwl-monotone-{k}")
        for _ in range(10):
            g = random_gnp(rng, rng.randint(1, 5), rng.uniform(0.2, 0.8))
            seq = refine_kwl(g, k)
            for earlier, later in zip(seq, seq[1:]):
                assert later.num_classes >= earlier.num_classes
                for cls in classes_of(later):
                    assert len({earlier.colors[v] for v in cls}) == 1

    @pytest.mark.parametrize("k", [2, 3])
    def test_soundness_on_permuted_copies(self, k):
        rng = random.Random(f"kwl-sound-{k}")
        for _ in range(20):
            n = rng.randint(1, 6)
            g = random_gnp(rng, n, rng.uniform(0.2, 0.8))
            perm = list(range(n))
            rng.shuffle(perm)
            report = compare(g, permute_graph(g, perm), f"{k}wl")
            assert not report.distinguished


class TestCompare:
    def test_c6_vs_two_triangles(self):
        c6, t2 = cycle_graph(6), two_triangles()
        assert compare(c6, t2, "1wl").verdict == "not-distinguished"
        nc = compare(c6, t2, "nc1wl")
        assert nc.verdict == "distinguished"
        assert nc.distinguishing_iteration == 1
        assert not brute_force_isomorphic(c6, t2)

    def test_c8_vs_two_squares(self):
        c8, s2 = cycle_graph(8), two_squares()
        assert compare(c8, s2, "nc1wl").verdict == "not-distinguished"
        assert compare(c8, s2, "3wl").verdict == "distinguished"
        assert not brute_force_isomorphic(c8, s2)

    def test_isomorphic_pair_3wl(self):
        k3 = complete_graph(3, [0, 1, 2])
        k3p = permute_graph(k3, [1, 2, 0])
        assert compare(k3, k3p, "3wl").verdict == "not-distinguished"

    def test_different_node_counts_distinguished_immediately(self):
        for method in METHODS:
            report = compare(path_graph(2), path_graph(3), method)
            assert report.distinguished
            assert report.distinguishing_iteration == 0

    def test_label_multiset_gap_distinguished_at_zero(self):
        report = compare(path_graph(2, [0, 0]), path_graph(2, [0, 1]), "1wl")
        assert report.distinguishing_iteration == 0

    def test_empty_graphs(self):
        g = Graph.build(0, [])
        report = compare(g, g, "1wl")
        assert report.verdict == "not-distinguished"
        assert report.iterations_run == 0

    def test_empty_vs_nonempty(self):
        for method in METHODS:
            report = compare(Graph.build(0, []), path_graph(2), method)
            assert report.distinguished
            assert report.distinguishing_iteration == 0

    def test_histogram_trace_invariant(self):
        report = compare(cycle_graph(6), two_triangles(), "nc1wl")
        k = report.distinguishing_iteration
        assert report.histograms[k][0] != report.histograms[k][1]
        for i in range(k):
            assert report.histograms[i][0] == report.histograms[i][1]

    def test_report_fields(self):
        report = compare(cycle_graph(6), two_triangles(), "1wl")
        assert report.method == "1wl"
        assert report.distinguishing_iteration is None
        assert report.iterations_run == len(report.histograms) - 1

    def test_unknown_method(self):
        with pytest.raises(ValueError, match="unknown method"):
            compare(path_graph(2), path_graph(2), "4wl")


class TestBruteForce:
    def test_relabeled_triangle(self):
        k3 = complete_graph(3, [0, 1, 2])
        assert brute_force_isomorphic(k3, permute_graph(k3, [2, 0, 1]))

    def test_triangles_vs_hexagon(self):
        assert not brute_force_isomorphic(cycle_graph(6), two_triangles())

    def test_path_is_a_star(self):
        assert brute_force_isomorphic(path_graph(3), star_graph(2))

    def test_labels_matter(self):
        assert not brute_force_isomorphic(path_graph(3, [0, 0, 0]), path_graph(3, [0, 1, 0]))

    def test_cap(self):
        with pytest.raises(ValueError, match="cap"):
            brute_force_isomorphic(Graph.build(11, []), Graph.build(11, []))


class TestProperties:
    @given(graphs(max_nodes=9, max_labels=2))
    @settings(max_examples=60)
    def test_monotone_refinement(self, g):
        for method, runner in (("1wl", refine_1wl), ("nc1wl", refine_nc1wl)):
            seq = runner(g)
            for earlier, later in zip(seq, seq[1:]):
                assert later.num_classes >= earlier.num_classes
                # every later class sits inside one earlier class
                for cls in classes_of(later):
                    assert len({earlier.colors[v] for v in cls}) == 1

    def test_soundness_200_trials_all_methods(self):
        rng = random.Random("soundness-trials")
        for _ in range(200):
            n = rng.randint(1, 10)
            g = random_gnp(rng, n, rng.uniform(0.1, 0.9), num_labels=rng.choice([1, 1, 2]))
            perm = list(range(n))
            rng.shuffle(perm)
            h = permute_graph(g, perm)
            for method in METHODS:
                assert not compare(g, h, method).distinguished, (method, g, perm)

    @given(graphs(max_nodes=8, max_labels=2), st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=60)
    def test_permutation_equivariance(self, g, seed):
        perm = list(range(g.node_count))
        random.Random(seed).shuffle(perm)
        h = permute_graph(g, perm)
        for runner in (refine_1wl, refine_nc1wl):
            seq_g, seq_h = runner(g), runner(h)
            assert len(seq_g) == len(seq_h)
            for cg, ch in zip(seq_g, seq_h):
                # same class sizes (ids are run-local), and matched nodes
                # always land in matched classes
                assert sorted(k for _, k in cg.histogram) == sorted(
                    k for _, k in ch.histogram
                )
                pairing = {}
                for v in range(g.node_count):
                    pairing.setdefault(cg.colors[v], set()).add(ch.colors[perm[v]])
                assert all(len(s) == 1 for s in pairing.values())
                assert len({next(iter(s)) for s in pairing.values()}) == len(pairing)

    def test_hierarchy_on_random_pairs(self):
        rng = random.Random("hierarchy-local")
        for _ in range(120):
            n = rng.randint(2, 8)
            g1 = random_gnp(rng, n, rng.uniform(0.2, 0.8))
            g2 = random_gnp(rng, n, rng.uniform(0.2, 0.8))
            verdicts = {m: compare(g1, g2, m).distinguished for m in METHODS}
            if verdicts["1wl"]:
                assert verdicts["nc1wl"]
            if verdicts["nc1wl"]:
                assert verdicts["3wl"]
            assert verdicts["2wl"] == verdicts["1wl"]
            if brute_force_isomorphic(g1, g2):
                assert not any(verdicts.values())

    def test_hierarchy_on_random_labeled_pairs(self):
        # labels flow into the initial colors of every method, including the
        # tuple atomic types
        rng = random.Random("hierarchy-labeled")
        for _ in range(60):
            n = rng.randint(2, 6)
            g1 = random_gnp(rng, n, rng.uniform(0.2, 0.8), num_labels=2)
            g2 = random_gnp(rng, n, rng.uniform(0.2, 0.8), num_labels=2)
            verdicts = {m: compare(g1, g2, m).distinguished for m in METHODS}
            if verdicts["1wl"]:
                assert verdicts["nc1wl"]
            if verdicts["nc1wl"]:
                assert verdicts["3wl"]
            assert verdicts["2wl"] == verdicts["1wl"]
            if brute_force_isomorphic(g1, g2):
                assert not any(verdicts.values())

    def test_refine_dispatch(self):
        g = path_graph(3)
        assert refine(g, "1wl")[-1].colors == refine_1wl(g)[-1].colors
        assert refine(g, "2wl")[-1].colors == refine_kwl(g, 2)[-1].colors
        with pytest.raises(ValueError):
            refine(g, "bogus")
