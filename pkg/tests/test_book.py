import pytest
from hypothesis import given, strategies as st

from twthick.book import (
    BookEmbedding,
    book_crosses,
    embed_2tree_forests,
    embed_star_forests,
    zigzag_complete,
)
from twthick.graph import KTreeBuild, complete_graph, complete_split, edge, qk_graph, random_ktree
from twthick.verify import check_book, check_colourful, simplicial_vertices


def test_book_crosses_examples():
    order = (0, 1, 2, 3)
    assert book_crosses(order, (0, 2), (1, 3))
    assert not book_crosses(order, (0, 1), (2, 3))
    assert not book_crosses(order, (0, 1), (0, 2))


@given(st.permutations(range(6)), st.sampled_from([(0, 3), (1, 4), (2, 5), (0, 1)]),
       st.sampled_from([(1, 2), (2, 4), (3, 5), (0, 5)]))
def test_book_crosses_is_rotation_invariant(order, e, f):
    order = tuple(order)
    base = book_crosses(order, e, f)
    for r in range(len(order)):
        assert book_crosses(order[r:] + order[:r], e, f) == base
    assert book_crosses(order[::-1], e, f) == base
    assert book_crosses(order, f, e) == base


def test_zigzag_pages():
    z = zigzag_complete(2)
    assert z.pages() == {1: [(0, 2), (0, 3), (1, 2)], 2: [(0, 1), (1, 3), (2, 3)]}
    assert zigzag_complete(1).pages() == {1: [(0, 1)]}
    z3 = zigzag_complete(3)
    assert len(z3.page_of) == 15 and z3.page_count == 3
    assert check_book(z3, complete_graph(6)).passed


def test_star_forests_k4():
    b = KTreeBuild(3, (0, 1, 2, 3))
    emb = embed_star_forests(b)
    assert emb.page_count == 3
    assert check_book(emb, b.graph, "star_forest").passed
    assert any(check_colourful(colouring(emb), v) for v in range(4))


def test_star_forests_triangle():
    emb = embed_star_forests(KTreeBuild(2, (0, 1, 2)))
    assert emb.page_count == 2
    assert sorted(map(len, emb.pages().values())) == [1, 2]


def colouring(emb):
    return dict(emb.page_of)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_star_forests_random(k):
    b = random_ktree(k, 60, k)
    emb = embed_star_forests(b)
    assert emb.page_count <= k + 1
    assert check_book(emb, b.graph, "star_forest").passed
    col = colouring(emb)
    assert all(check_colourful(col, v) for v in simplicial_vertices(b.graph, k))


def test_star_forests_split_graph_colourful():
    b = complete_split(3, 12)
    emb = embed_star_forests(b)
    col = colouring(emb)
    assert all(check_colourful(col, v) for v in range(3, 15))


def test_star_forests_qk():
    b = qk_graph(3)
    emb = embed_star_forests(b)
    assert emb.page_count <= 4
    assert check_book(emb, b.graph, "star_forest").passed


def test_two_tree_forests_triangle():
    emb = embed_2tree_forests(KTreeBuild(2, (0, 1, 2)))
    assert emb.page_count == 2
    col = colouring(emb)
    assert sum(check_colourful(col, v) for v in range(3)) >= 2


def test_two_tree_forests():
    for b in (complete_split(2, 3), random_ktree(2, 100, 9), random_ktree(2, 40, 3)):
        emb = embed_2tree_forests(b)
        assert emb.page_count <= 2
        assert check_book(emb, b.graph, "forest").passed
        col = colouring(emb)
        assert all(check_colourful(col, v) for v in simplicial_vertices(b.graph, 2))


def test_two_tree_forests_need_k2():
    with pytest.raises(ValueError):
        embed_2tree_forests(random_ktree(3, 6, 0))


def test_book_json_round_trip():
    emb = embed_star_forests(random_ktree(3, 20, 1))
    assert BookEmbedding.from_json(emb.to_json()) == emb


def test_book_validation():
    with pytest.raises(ValueError):
        BookEmbedding((0, 0), {}, 1)
    with pytest.raises(ValueError):
        BookEmbedding((0, 1), {edge(0, 1): 2}, 1)
