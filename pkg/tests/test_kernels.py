import os
import subprocess
import sys

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from twthick import _kernels_py as py
from twthick import kernels

try:
    from twthick import _kernels as cy
except ImportError:  # extension not built
    cy = None

needs_cy = pytest.mark.skipif(cy is None, reason="compiled kernels not built")

q = st.builds(lambda a, b: mpq(a, b), st.integers(-8, 8), st.sampled_from([1, 2, 3, 4]))
points = st.lists(st.tuples(q, q), min_size=0, max_size=12, unique=True)  # drawings place vertices injectively


def _segs(pts):
    out = []
    for i in range(0, len(pts) - 1, 2):
        (ax, ay), (bx, by) = pts[i], pts[i + 1]
        if (ax, ay) != (bx, by):
            out.append((i, i + 1, ax, ay, bx, by))
    return out


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_env_forces_python():
    code = "from twthick import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, TWTHICK_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def _naive_crossings(segs):
    from twthick.geometry import point, segments_cross

    out = []
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            a = segs[i]
            b = segs[j]
            if segments_cross(point(a[2], a[3]), point(a[4], a[5]), point(b[2], b[3]), point(b[4], b[5])):
                out.append((i, j))
    return out


@given(points)
def test_crossing_pairs_match_predicate(pts):
    segs = _segs(pts)
    assert sorted(py.crossing_pairs(segs)) == _naive_crossings(segs)


@given(points)
def test_collinear_triples_naive(pts):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    got = py.collinear_triples(xs, ys)
    want = []
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(j + 1, n):
                if py.orient(xs[i], ys[i], xs[j], ys[j], xs[l], ys[l]) == 0:
                    want.append((i, j, l))
    assert sorted(got) == want


@given(points, q, q)
def test_min_line_dist2_naive(pts, px, py_):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    vals = []
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            dx, dy = xs[j] - xs[i], ys[j] - ys[i]
            if dx == 0 and dy == 0:
                continue
            c = (xs[i] - px) * dy - (ys[i] - py_) * dx
            vals.append(c * c / (dx * dx + dy * dy))
    assert py.min_line_dist2(px, py_, xs, ys) == (min(vals) if vals else None)


@needs_cy
@given(points, q, q)
def test_backends_agree(pts, px, py_):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    segs = _segs(pts)
    assert py.crossing_pairs(segs) == cy.crossing_pairs(segs)
    assert py.crossing_pairs(segs, True) == cy.crossing_pairs(segs, True)
    assert py.collinear_triples(xs, ys) == cy.collinear_triples(xs, ys)
    assert py.point_on_pair_line(px, py_, xs, ys, set()) == cy.point_on_pair_line(px, py_, xs, ys, set())
    assert py.min_line_dist2(px, py_, xs, ys) == cy.min_line_dist2(px, py_, xs, ys)


@needs_cy
@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=25), st.permutations(range(10)))
def test_book_kernels_agree(pairs, order):
    pairs = [(a, b) for a, b in pairs if a != b]
    eu = [a for a, _ in pairs]
    ev = [b for _, b in pairs]
    pos = list(order)
    n1 = py.book_conflicts(pos, eu, ev)
    assert n1 == cy.book_conflicts(pos, eu, ev)
    assert py.greedy_clique(n1) == cy.greedy_clique(n1)
    for c in range(4):
        assert py.colour_graph(n1, c) == cy.colour_graph(n1, c)


def test_point_on_pair_line_skips_pairs():
    xs = [mpq(0), mpq(2)]
    ys = [mpq(0), mpq(2)]
    assert py.point_on_pair_line(mpq(1), mpq(1), xs, ys, set()) == (0, 1)
    assert py.point_on_pair_line(mpq(1), mpq(1), xs, ys, {(0, 1)}) is None


def test_colour_graph_small():
    triangle = [[1, 2], [0, 2], [0, 1]]
    assert py.colour_graph(triangle, 2) is None
    col = py.colour_graph(triangle, 3)
    assert sorted(col) == [0, 1, 2]
