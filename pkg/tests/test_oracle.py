import json
import random
from itertools import combinations
from math import ceil

import pytest

from twthick.book import embed_2tree_forests, embed_star_forests
from twthick.construct import draw_forests, draw_thickness
from twthick.graph import Graph, complete_graph, complete_split, random_ktree
from twthick.oracle import (
    exact_arboricity,
    exact_book_thickness,
    exact_outerthickness,
    exact_star_arboricity,
    exact_thickness,
    forest_partition,
    inequality_chain_check,
    triangulations,
)
from twthick.planarity import is_planar
from twthick.verify import check_book, check_edge_partition, nash_williams


def random_graph(rng, n, p=0.5):
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


@pytest.mark.parametrize("n", range(4, 9))
def test_book_thickness_of_complete_graphs(n):
    res = exact_book_thickness(complete_graph(n))
    assert res.value == ceil(n / 2)
    assert check_book(res.witness, complete_graph(n)).passed


def test_book_thickness_small_cases():
    assert exact_book_thickness(complete_split(2, 3).graph).value == 2
    assert exact_book_thickness(Graph.from_edges(4, [(0, 1), (1, 2)])).value == 1
    assert exact_book_thickness(Graph(3, frozenset())).value == 0
    with pytest.raises(ValueError):
        exact_book_thickness(complete_graph(10))


@pytest.mark.parametrize("n,value", [(4, 1), (5, 2), (6, 2), (7, 2), (8, 2), (9, 3)])
def test_thickness_of_complete_graphs(n, value):
    res = exact_thickness(complete_graph(n))
    assert res.value == value
    assert check_edge_partition(complete_graph(n), res.witness, "planar").passed


def test_triangulation_counts():
    # unlabelled maximal planar graphs on n vertices
    assert [len(triangulations(n)) for n in range(4, 10)] == [1, 1, 2, 5, 14, 50]


def test_thickness_of_non_complete_graph():
    k33 = Graph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])
    res = exact_thickness(k33)
    assert res.value == 2 and check_edge_partition(k33, res.witness, "planar").passed


@pytest.mark.parametrize("n", range(2, 9))
def test_arboricity_of_complete_graphs(n):
    res = exact_arboricity(complete_graph(n))
    assert res.value == ceil(n / 2)
    assert check_edge_partition(complete_graph(n), res.witness, "forest").passed


def test_arboricity_examples():
    tree = Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert exact_arboricity(tree).value == 1
    forests, dense = forest_partition(sorted(complete_graph(5).edges), 2)
    assert forests is None and len(dense) == 5


def test_arboricity_matches_nash_williams():
    rng = random.Random(5)
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 8), rng.random())
        assert exact_arboricity(g).value == nash_williams(g)


def test_star_arboricity_examples():
    assert exact_star_arboricity(Graph.from_edges(6, [(0, i) for i in range(1, 6)])).value == 1
    assert exact_star_arboricity(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])).value == 2
    res = exact_star_arboricity(complete_graph(4))
    assert res.value == 3
    assert check_edge_partition(complete_graph(4), res.witness, "star_forest").passed
    assert exact_star_arboricity(complete_graph(6)).value == 4


def test_outerthickness_examples():
    assert exact_outerthickness(complete_graph(4)).value == 2
    assert exact_outerthickness(complete_graph(3)).value == 1
    res = exact_outerthickness(complete_graph(6))
    assert res.value == 2
    assert check_edge_partition(complete_graph(6), res.witness, "outerplanar").passed


def test_chain_on_k4():
    rep = inequality_chain_check(complete_graph(4))
    assert rep.passed
    assert rep.parameters == {"thickness": 1, "outerthickness": 2, "arboricity": 2, "star_arboricity": 3}


def test_chain_on_trees():
    rng = random.Random(1)
    for n in range(2, 8):
        edges = [(rng.randrange(i), i) for i in range(1, n)]
        rep = inequality_chain_check(Graph.from_edges(n, edges))
        assert rep.passed and max(rep.parameters.values()) <= 2


def test_results_are_deterministic_and_serialisable():
    g = complete_split(2, 3).graph
    a = exact_book_thickness(g).to_json()
    b = exact_book_thickness(g).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["proof"]["orders"] >= 1
    t = exact_thickness(complete_graph(7)).to_json()
    assert t["value"] == 2 and len(t["witness"]) == 2


def test_constructions_never_beat_the_oracle():
    rng = random.Random(3)
    for k in (1, 2, 3):
        for _ in range(3):
            b = random_ktree(k, rng.randint(k + 2, 8), rng.randrange(1 << 30))
            g = b.graph
            assert embed_star_forests(b).page_count >= exact_book_thickness(g).value
            if len(g.edges) <= 18:
                assert embed_star_forests(b).page_count >= exact_star_arboricity(g).value
            assert draw_forests(b).colour_count >= exact_arboricity(g).value
            if k == 2:
                assert embed_2tree_forests(b).page_count >= exact_book_thickness(g).value
                assert draw_thickness(b).colour_count >= exact_thickness(g).value
