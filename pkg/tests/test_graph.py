import pytest
from hypothesis import given, strategies as st

from twthick.graph import (
    CaseA,
    CaseB,
    Graph,
    KTreeBuild,
    NotAKTree,
    check_partition_case,
    complete_graph,
    complete_split,
    ktree_certify,
    ktree_edge_count,
    ktree_lift,
    lemma_partition,
    partition_chain,
    qk_graph,
    random_ktree,
    star_lb_graph,
)


def test_certify_complete_graph_is_base_only():
    b = ktree_certify(complete_graph(4), 3)
    assert len(b.base) == 4 and b.additions == ()


def test_cycle_is_not_a_tree():
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(NotAKTree):
        ktree_certify(c4, 1)


def test_certify_split_graph_adds_onto_the_clique():
    g = complete_split(3, 5).graph
    b = ktree_certify(g, 3)
    assert b.graph == g
    assert len(b.additions) == 4  # one S-vertex sits in the base
    cliques = {tuple(sorted(c)) for _, c in b.additions}
    assert len(cliques) <= 2


def test_random_ktree_examples():
    t = random_ktree(1, 5, 0)
    assert t.graph.vertex_count == 5 and len(t.graph.edges) == 4
    b = random_ktree(3, 50, 7)
    assert len(b.additions) == 46 and len(b.graph.edges) == 144
    with pytest.raises(ValueError):
        random_ktree(2, 2, 0)


def test_random_ktree_is_reproducible():
    assert random_ktree(3, 30, 5) == random_ktree(3, 30, 5)
    assert random_ktree(3, 30, 5) != random_ktree(3, 30, 6)


@given(st.integers(1, 5), st.integers(0, 25), st.integers(0, 10**6))
def test_build_round_trip_and_edge_count(k, extra, seed):
    b = random_ktree(k, k + 1 + extra, seed)
    g = b.graph
    assert len(g.edges) == ktree_edge_count(k, g.vertex_count)
    assert ktree_certify(g, k).graph == g
    assert KTreeBuild.from_json(b.to_json()) == b


@given(st.integers(1, 5), st.integers(0, 25), st.integers(0, 10**6))
def test_partition_case_invariants(k, extra, seed):
    b = random_ktree(k, k + 1 + extra, seed)
    case = lemma_partition(b)
    assert check_partition_case(b.graph, k, range(b.n), case) == []


def test_partition_examples():
    assert isinstance(lemma_partition(KTreeBuild(3, (0, 1, 2, 3))), CaseA)
    assert len(lemma_partition(KTreeBuild(3, (0, 1, 2, 3))).S) == 1
    split = lemma_partition(complete_split(3, 5))
    assert isinstance(split, CaseA) and set(split.S) == set(range(3, 8))
    b = KTreeBuild(2, (0, 1, 2), ((3, (0, 2)), (4, (0, 3))))
    assert isinstance(lemma_partition(b), CaseB)


def test_partition_chain_ends_in_case_a():
    b = random_ktree(3, 40, 2)
    chain = partition_chain(b.graph, 3)
    assert isinstance(chain[-1][1], CaseA)
    removed = set()
    for vs, case in chain:
        assert check_partition_case(b.graph, 3, vs, case) == []
        removed |= set(case.S)
    assert len(removed) <= b.n


def test_complete_split_examples():
    g = complete_split(3, 5).graph
    assert (g.vertex_count, len(g.edges)) == (8, 18)
    assert complete_split(1, 1).graph == complete_graph(2)
    assert len(complete_split(2, 3).graph.edges) == 7


def test_qk_graph_size():
    g = qk_graph(3).graph
    assert (g.vertex_count, len(g.edges)) == (250, 744)
    with pytest.raises(ValueError):
        qk_graph(2)


def test_star_gadget_counts():
    gad = star_lb_graph(2)
    assert (gad.graph.vertex_count, len(gad.graph.edges)) == (12, 16)
    assert len(gad.pendants) == 5
    one = star_lb_graph(1)
    assert one.graph.vertex_count == 5 and len(one.S) == 2


def test_lift_examples():
    base = KTreeBuild(2, (0, 1, 2))
    lifted = ktree_lift(base)
    assert lifted.graph == complete_graph(4)
    path = KTreeBuild(1, (0, 1), ((2, (1,)),))
    lp = ktree_lift(path)
    assert lp.n == 4 and path.graph.edges <= lp.graph.edges
    ktree_certify(lp.graph, 2)
    b = random_ktree(3, 30, 1)
    lb = ktree_lift(b)
    assert lb.n == 31 and b.graph.edges <= lb.graph.edges and len(b.graph.edges) == 84
    ktree_certify(lb.graph, 4)


def test_bad_builds_rejected():
    with pytest.raises(ValueError):
        KTreeBuild(2, (0, 1, 2), ((3, (0, 4)),)).realize()
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])


def test_graph_json_round_trip():
    g = complete_split(2, 4).graph
    assert Graph.from_json(g.to_json()) == g
