"""Loader, condensation, and topological ordering."""

import pytest

from hubgraph import AttributedGraph, GenConfig, GraphLoadError, \
    condense_scc, generate, load_graph, topological_order, whole_view
from hubgraph.aggregate import AggFunction

from conftest import bfs_reach, tiny_graph


def write_pair(tmp_path, vrows, erows, delimiter="\t", vcols="vid\tv_grp\tv_mr",
               ecols="src_vid\ttgt_vid\te_grp\te_mr"):
    vp = tmp_path / "v.tsv"
    ep = tmp_path / "e.tsv"
    vp.write_text("\n".join([vcols.replace("\t", delimiter)] +
                            [delimiter.join(map(str, r)) for r in vrows]) + "\n")
    ep.write_text("\n".join([ecols.replace("\t", delimiter)] +
                            [delimiter.join(map(str, r)) for r in erows]) + "\n")
    return vp, ep


class TestLoadGraph:
    def test_empty_tables(self, tmp_path):
        vp, ep = write_pair(tmp_path, [], [])
        g = load_graph(vp, ep)
        assert g.n_vertices == 0 and g.n_edges == 0

    def test_small_counts_and_degree(self, tmp_path):
        vp, ep = write_pair(tmp_path, [(0, 1, 5), (1, 1, 7), (2, 2, 3)],
                            [(0, 1, 1, 2), (1, 2, 1, 4)])
        g = load_graph(vp, ep)
        assert g.n_vertices == 3 and g.n_edges == 2
        assert len(g.out_edges[g.index_of(0)]) == 1

    def test_roundtrip_through_save(self, tmp_path):
        g = generate(GenConfig(n=60, degree=3, cardinality=8, seed=11))
        vp = tmp_path / "v.tsv"
        ep = tmp_path / "e.tsv"
        g.save(vp, ep)
        g2 = load_graph(vp, ep)
        assert g2.vids == g.vids
        assert g2.v_grp == g.v_grp and g2.v_mr == g.v_mr
        assert sorted(zip(g2.e_src, g2.e_tgt, g2.e_grp, g2.e_mr)) == \
            sorted(zip(g.e_src, g.e_tgt, g.e_grp, g.e_mr))

    def test_duplicate_vid_rejected(self):
        with pytest.raises(GraphLoadError, match="duplicate"):
            AttributedGraph([(1, 0, 0), (1, 0, 0)], [])

    def test_dangling_endpoint_rejected(self):
        with pytest.raises(GraphLoadError, match="dangling"):
            AttributedGraph([(1, 0, 0)], [(1, 9, 0, 0)])

    def test_malformed_row_names_line(self, tmp_path):
        vp = tmp_path / "v.tsv"
        vp.write_text("vid\tv_grp\tv_mr\n0\t1\t2\nx\t1\t2\n")
        ep = tmp_path / "e.tsv"
        ep.write_text("src_vid\ttgt_vid\te_grp\te_mr\n")
        with pytest.raises(GraphLoadError, match=":3"):
            load_graph(vp, ep)

    def test_bad_header_rejected(self, tmp_path):
        vp, ep = write_pair(tmp_path, [], [], vcols="a\tb\tc")
        with pytest.raises(GraphLoadError, match="header"):
            load_graph(vp, ep)

    def test_custom_delimiter(self, tmp_path):
        vp, ep = write_pair(tmp_path, [(0, 1, 5)], [], delimiter=",")
        g = load_graph(vp, ep, delimiter=",")
        assert g.n_vertices == 1

    def test_labels_loaded(self, tmp_path):
        vp = tmp_path / "v.tsv"
        vp.write_text("vid\tv_grp\tv_mr\tlabel\n0\t1\t5\talice\n")
        ep = tmp_path / "e.tsv"
        ep.write_text("src_vid\ttgt_vid\te_grp\te_mr\n")
        g = load_graph(vp, ep)
        assert g.v_label[0] == "alice"


SUM_V = AggFunction("sv", "vertex", "sum", measure="v_mr")


class TestCondense:
    def test_dag_is_identity(self):
        g = tiny_graph([(1, 1, 1), (2, 1, 2), (3, 1, 3)],
                       [(1, 2, 0, 0), (2, 3, 0, 0)])
        cg = condense_scc(whole_view(g), [SUM_V])
        assert cg.n_super == 3
        assert all(len(m) == 1 for m in cg.members)
        assert [t[()] for t in cg.vertex_tables["sv"]] == [1, 2, 3]

    def test_three_cycle_sums_to_six(self):
        g = tiny_graph([(1, 0, 1), (2, 0, 2), (3, 0, 3)],
                       [(1, 2, 0, 0), (2, 3, 0, 0), (3, 1, 0, 0)])
        cg = condense_scc(whole_view(g), [SUM_V])
        assert cg.n_super == 1
        assert cg.vertex_tables["sv"][0][()] == 6

    def test_no_self_loops_after_condense(self):
        g = generate(GenConfig(n=80, degree=4, cardinality=8,
                               cycle_fraction=0.3, seed=3))
        cg = condense_scc(whole_view(g))
        assert all(s != t for s, t in zip(cg.e_super_src, cg.e_super_tgt))

    def test_condensation_reachability_soundness(self):
        for seed in range(5):
            g = generate(GenConfig(n=50, degree=3, cardinality=4,
                                   cycle_fraction=0.2, seed=seed))
            cg = condense_scc(whole_view(g))
            for u in range(0, g.n_vertices, 7):
                reach = bfs_reach(g, u)
                sup_reach = _super_reach(cg, cg.super_of[u])
                for v in range(g.n_vertices):
                    assert (v in reach) == (cg.super_of[v] in sup_reach)

    def test_parallel_inter_scc_edges_kept(self):
        g = tiny_graph([(1, 0, 1), (2, 0, 2)],
                       [(1, 2, 1, 5), (1, 2, 2, 6)])
        cg = condense_scc(whole_view(g))
        assert len(cg.e_orig) == 2

    def test_determinism(self):
        g = generate(GenConfig(n=60, degree=4, cardinality=8,
                               cycle_fraction=0.2, seed=5))
        a = condense_scc(whole_view(g))
        b = condense_scc(whole_view(g))
        assert a.members == b.members
        assert topological_order(a) == topological_order(b)


def _super_reach(cg, s):
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for v in cg.out_adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


class TestTopologicalOrder:
    def test_single_vertex(self):
        g = tiny_graph([(1, 0, 0)], [])
        cg = condense_scc(whole_view(g))
        assert topological_order(cg) == [0]

    def test_chain(self):
        g = tiny_graph([(0, 0, 0), (1, 0, 0), (2, 0, 0)],
                       [(0, 1, 0, 0), (1, 2, 0, 0)])
        cg = condense_scc(whole_view(g))
        assert topological_order(cg) == [0, 1, 2]

    def test_edges_respect_order(self):
        g = generate(GenConfig(n=100, degree=4, cardinality=8,
                               cycle_fraction=0.1, seed=9))
        cg = condense_scc(whole_view(g))
        pos = {s: i for i, s in enumerate(topological_order(cg))}
        for s, t in zip(cg.e_super_src, cg.e_super_tgt):
            assert pos[s] < pos[t]
