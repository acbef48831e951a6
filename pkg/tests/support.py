"""Helpers shared by the test modules."""
import random

from gmpy2 import mpq

from twthick import kernels
from twthick.drawing import Drawing, segs
from twthick.geometry import Point


def random_offset(rng: random.Random, eps, grain: int = 1 << 12) -> Point:
    """Uniform rational point of the open disc of radius eps on a fine grid."""
    while True:
        dx = mpq(rng.randrange(-grain + 1, grain), grain)
        dy = mpq(rng.randrange(-grain + 1, grain), grain)
        if dx * dx + dy * dy < 1:
            return Point(dx * eps, dy * eps)


def perturbed(d: Drawing, eps, rng: random.Random) -> dict:
    return {v: p + random_offset(rng, eps) for v, p in d.pos.items()}


def collinear_set(pos: dict) -> set:
    order = sorted(pos)
    xs = [pos[v].x for v in order]
    ys = [pos[v].y for v in order]
    return {tuple(order[i] for i in t) for t in kernels.collinear_triples(xs, ys)}


def robust_under(d: Drawing, eps, rng: random.Random, trials: int) -> list[str]:
    """Failures among ``trials`` random perturbations within eps."""
    before = collinear_set(d.pos)
    bad = []
    for t in range(trials):
        pos = perturbed(d, eps, rng)
        if len(set(pos.values())) < len(pos):
            bad.append(f"trial {t}: two vertices coincide")
            continue
        for c in range(1, d.colour_count + 1):
            if kernels.crossing_pairs(segs(pos, d.colour_class(c)), True):
                bad.append(f"trial {t}: colour {c} crosses")
        if not collinear_set(pos) <= before:
            bad.append(f"trial {t}: new collinear triple")
    return bad
