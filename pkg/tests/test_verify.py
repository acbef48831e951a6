import random
from itertools import combinations

import pytest

from twthick.book import BookEmbedding, zigzag_complete
from twthick.construct import base_complete_odd, draw_forests
from twthick.drawing import Drawing
from twthick.geometry import point
from twthick.graph import Graph, KTreeBuild, complete_graph, complete_split, edge, star_lb_graph
from twthick.verify import (
    MonoWitness,
    PreconditionError,
    Report,
    check_book,
    check_colourful,
    check_drawing_layers,
    check_edge_partition,
    check_fan,
    is_k4_minor_free,
    nash_williams,
    refute_outerthickness,
    refute_star_arboricity,
    refute_thickness,
    validate_witness,
)


def test_report_json():
    r = Report()
    assert r.passed and r.to_json() == {"passed": True, "violations": []}
    r.add("crossing", (0, 2), (1, 3))
    assert not r and r.kinds() == {"crossing"}
    assert r.to_json()["violations"] == [{"kind": "crossing", "detail": [[0, 2], [1, 3]]}]


def test_check_book_examples():
    assert check_book(zigzag_complete(2), complete_graph(4)).passed
    g = Graph.from_edges(4, [(0, 2), (1, 3)])
    rep = check_book(BookEmbedding((0, 1, 2, 3), {(0, 2): 1, (1, 3): 1}, 1), g)
    assert not rep.passed and rep.violations[0][0] == "crossing"


def test_check_book_star_forest_path():
    # the path w-x-p-y on one page is a forest but not a star forest
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    emb = BookEmbedding((0, 1, 2, 3), {e: 1 for e in g.edges}, 1)
    assert check_book(emb, g, "forest").passed
    assert "not_star" in check_book(emb, g, "star_forest").kinds()


def test_check_book_cycle():
    g = complete_graph(3)
    emb = BookEmbedding((0, 1, 2), {e: 1 for e in g.edges}, 1)
    assert "cycle" in check_book(emb, g, "forest").kinds()


def test_check_book_coverage():
    with pytest.raises(ValueError):
        check_book(zigzag_complete(2), complete_graph(5))


def test_check_drawing_examples():
    b = KTreeBuild(3, (0, 1, 2, 3))
    assert check_drawing_layers(draw_forests(b), b.graph, "forest").passed
    cross = Drawing(
        {0: point(0, 0), 1: point(1, 1), 2: point(0, 1), 3: point(1, 0)},
        {(0, 1): 1, (2, 3): 1},
        1,
    )
    assert "crossing" in check_drawing_layers(cross, cross.graph()).kinds()
    line = Drawing({0: point(0, 0), 1: point(1, 1), 2: point(2, 2)}, {(0, 1): 1}, 1)
    assert "collinear" in check_drawing_layers(line, line.graph()).kinds()


def test_colourful():
    assert check_colourful({(0, 1): 1}, 0)
    assert not check_colourful({(0, 1): 1, (0, 2): 1}, 0)


def test_check_fan_degree():
    d = base_complete_odd(2)
    assert check_fan(d, 0)
    star = Drawing({0: point(0, 0), 1: point(1, 0), 2: point(0, 1)}, {(0, 1): 1, (0, 2): 1}, 2)
    with pytest.raises(ValueError):
        check_fan(star, 0)


def test_nash_williams_examples():
    assert nash_williams(Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])) == 1
    assert nash_williams(complete_graph(4)) == 2
    assert nash_williams(complete_graph(5)) == 3
    with pytest.raises(ValueError):
        nash_williams(complete_graph(13))


def test_k4_minor():
    assert not is_k4_minor_free(complete_graph(4))
    assert is_k4_minor_free(complete_split(2, 6).graph)
    # a subdivided K4 still has the minor
    sub = [(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    assert not is_k4_minor_free(sub)


def test_edge_partition_checks():
    g = complete_graph(5)
    es = sorted(g.edges)
    assert "not_planar" in check_edge_partition(g, [es], "planar").kinds()
    rep = check_edge_partition(g, [es[:5]], "planar")
    assert "uncovered_edge" in rep.kinds()
    assert "repeated_edge" in check_edge_partition(g, [es, es[:1]], "planar").kinds()
    with pytest.raises(ValueError):
        check_edge_partition(g, [es], "bogus")


def split_colouring(k, s, colours, rng):
    g = complete_split(k, s).graph
    return g, {e: rng.randrange(colours) for e in sorted(g.edges)}


def test_refute_thickness_monochromatic():
    g = complete_split(5, 65).graph
    col = {e: 1 for e in g.edges}
    w = refute_thickness(col, 5, 65, 2)
    assert w.kind == "K33" and w.colour == 1 and validate_witness(w, g, col)


def test_refute_thickness_random():
    rng = random.Random(4)
    for _ in range(50):
        g, col = split_colouring(5, 65, 2, rng)
        assert validate_witness(refute_thickness(col, 5, 65, 2), g, col)


def test_refute_thickness_preconditions():
    g = complete_split(5, 64).graph
    col = {e: 0 for e in g.edges}
    with pytest.raises(PreconditionError):
        refute_thickness(col, 5, 64, 2)
    with pytest.raises(PreconditionError):
        refute_thickness(col, 4, 64, 2)
    three = complete_split(5, 65).graph
    with pytest.raises(PreconditionError):
        refute_thickness({e: i % 3 for i, e in enumerate(sorted(three.edges))}, 5, 65, 2)


def test_refute_outerthickness():
    g = complete_split(2, 3).graph
    col = {e: 0 for e in g.edges}
    w = refute_outerthickness(col, 2, 3, 1)
    assert w.kind == "K23" and set(w.vertices) == set(range(5))
    rng = random.Random(6)
    for _ in range(50):
        g, col = split_colouring(3, 17, 2, rng)
        assert validate_witness(refute_outerthickness(col, 3, 17, 2), g, col)
    with pytest.raises(PreconditionError):
        refute_outerthickness(col, 3, 16, 2)


def test_refute_star_arboricity():
    gad = star_lb_graph(2)
    col = {e: 1 for e in gad.graph.edges}
    w = refute_star_arboricity(col, gad)
    assert validate_witness(w, gad.graph, col)
    rng = random.Random(8)
    gad3 = star_lb_graph(3)
    for _ in range(50):
        col = {e: rng.randrange(3) for e in sorted(gad3.graph.edges)}
        w = refute_star_arboricity(col, gad3)
        assert w.kind in ("P4", "C4") and validate_witness(w, gad3.graph, col)


def test_refute_star_needs_all_edges():
    gad = star_lb_graph(2)
    col = {e: 0 for e in sorted(gad.graph.edges)[1:]}
    with pytest.raises(PreconditionError):
        refute_star_arboricity(col, gad)


def test_witness_validation_rejects_fakes():
    g = complete_graph(4)
    col = {e: 0 for e in g.edges}
    assert validate_witness(MonoWitness("P4", (0, 1, 2, 3), 0), g, col)
    assert not validate_witness(MonoWitness("P4", (0, 1, 2, 3), 1), g, col)
    assert not validate_witness(MonoWitness("P4", (0, 1, 1, 3), 0), g, col)
    assert not validate_witness(MonoWitness("K33", (0, 1, 2, 3), 0), g, col)
    assert MonoWitness("C4", (0, 1, 2, 3), 0).to_json() == {"kind": "C4", "vertices": [0, 1, 2, 3], "colour": 0}
