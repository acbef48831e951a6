import random

import pytest

from support import robust_under
from twthick import construct
from twthick.construct import (
    base_complete_odd,
    draw_forests,
    draw_planar_2tree,
    draw_thickness,
    good_draw,
    insert_fan_copy,
)
from twthick.drawing import perturbation_radius
from twthick.graph import KTreeBuild, complete_split, random_ktree
from twthick.verify import check_drawing_layers, check_fan, check_good, is_k4_minor_free


def passes(d, build, mode="noncrossing"):
    rep = check_drawing_layers(d, build.graph, mode)
    assert rep.passed, rep.violations[:5]


def test_planar_triangle():
    b = KTreeBuild(2, (0, 1, 2))
    d = draw_planar_2tree(b)
    passes(d, b)
    assert d.colour_count == 1


@pytest.mark.parametrize("build", [complete_split(2, 10), random_ktree(2, 100, 1), random_ktree(1, 60, 2)])
def test_planar_drawings(build):
    passes(draw_planar_2tree(build), build)


def test_planar_rejects_k3():
    with pytest.raises(ValueError):
        draw_planar_2tree(random_ktree(3, 6, 0))


def test_forests_tree():
    b = random_ktree(1, 30, 4)
    d = draw_forests(b)
    assert d.colour_count == 1
    passes(d, b, "forest")


def test_forests_k4_are_stars():
    b = KTreeBuild(3, (0, 1, 2, 3))
    d = draw_forests(b)
    assert d.colour_count == 3
    passes(d, b, "star_forest")


def test_forests_random_3tree():
    b = random_ktree(3, 50, 5)
    d = draw_forests(b)
    assert d.colour_count == 3
    passes(d, b, "forest")


def test_base_case_fans():
    for k in (2, 3):
        d = base_complete_odd(k)
        b = KTreeBuild(2 * k, tuple(range(2 * k + 1)))
        assert d.colour_count == k
        assert check_fan(d, 0)
        assert check_good(d, b).passed
    with pytest.raises(ValueError):
        base_complete_odd(1)


def test_insert_copies_stay_good():
    d = base_complete_odd(2)
    nbrs = tuple(sorted(d.adj[0]))
    additions = []
    for w in range(5, 15):
        d = insert_fan_copy(d, 0, w)
        additions.append((w, nbrs))
        b = KTreeBuild(4, (0, 1, 2, 3, 4), tuple(additions))
        assert check_good(d, b).passed
        assert check_fan(d, w)


def test_insert_needs_a_fan():
    d = base_complete_odd(2)
    with pytest.raises(ValueError):
        insert_fan_copy(d, 1, 9)  # the polygon vertices have degree 4 but are not fans


@pytest.mark.parametrize(
    "build",
    [KTreeBuild(4, (0, 1, 2, 3, 4)), complete_split(4, 3), random_ktree(4, 30, 3), random_ktree(6, 20, 1)],
)
def test_good_drawings(build):
    d = good_draw(build)
    assert d.colour_count == build.k // 2
    rep = check_good(d, build)
    assert rep.passed, rep.violations[:5]
    for c in range(1, d.colour_count + 1):
        assert is_k4_minor_free(d.colour_class(c))


def test_good_draw_rejects_odd():
    with pytest.raises(ValueError):
        good_draw(random_ktree(3, 8, 0))


def test_fallback_move_keeps_drawings_good(monkeypatch):
    # force the guaranteed-radius branch for every CaseB step
    monkeypatch.setattr(construct, "_move_off_segments", lambda *a: False)
    b = random_ktree(4, 16, 2)
    d = good_draw(b)
    assert check_good(d, b).passed


@pytest.mark.parametrize("k,n,colours", [(1, 15, 1), (2, 20, 1), (3, 20, 2), (4, 30, 2), (5, 20, 3)])
def test_thickness_colours(k, n, colours):
    b = random_ktree(k, n, k)
    d = draw_thickness(b)
    assert d.colour_count == colours
    assert set(d.colour_of) == set(b.graph.edges)
    passes(d, b)


def test_layers_survive_perturbation():
    b = random_ktree(2, 12, 8)
    d = draw_planar_2tree(b)
    eps = perturbation_radius(d)
    assert robust_under(d, eps, random.Random(0), 100) == []


def coordinate_bits(d):
    return max(max(p.x.denominator.bit_length(), p.y.denominator.bit_length()) for p in d.pos.values())


def test_forest_coordinates_stay_small():
    # a neighbour close to the pivot used to scale every later step down with it
    b = random_ktree(4, 100, 94616301)
    d = draw_forests(b)
    assert coordinate_bits(d) < 2000
    assert check_drawing_layers(d, b.graph, "forest").passed


def test_thickness_with_close_neighbour():
    b = random_ktree(5, 60, 2012)
    d = draw_thickness(b)
    assert d.colour_count == 3
    assert check_drawing_layers(d, b.graph).passed
