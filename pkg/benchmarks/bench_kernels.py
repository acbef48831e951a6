"""Time the compiled kernels against the pure-Python fallback on identical inputs.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import random
import time

from gmpy2 import mpq

from twthick import _kernels_py as py

try:
    from twthick import _kernels as cy
except ImportError:
    cy = None


def rational(rng, bits):
    return mpq(rng.randrange(-(1 << bits), 1 << bits), 1 << rng.randrange(1, bits))


def cases(rng):
    pts = [(rational(rng, 24), rational(rng, 24)) for _ in range(400)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    segs = []
    for i in range(300):
        a, b = rng.sample(range(len(pts)), 2)
        segs.append((a, b, *pts[a], *pts[b]))
    # a crossing-free batch is the worst case for the sweep: every pair is tested
    grid = [(i, i + 1000, mpq(i), mpq(0), mpq(i), mpq(1)) for i in range(300)]
    order = list(range(60))
    rng.shuffle(order)
    eu, ev = zip(*[tuple(rng.sample(range(60), 2)) for _ in range(400)])
    fewer = 120
    return [
        ("crossing_pairs (random)", lambda k: k.crossing_pairs(segs)),
        ("crossing_pairs (disjoint)", lambda k: k.crossing_pairs(grid)),
        ("collinear_triples", lambda k: k.collinear_triples(xs, ys)),
        ("point_on_pair_line", lambda k: k.point_on_pair_line(mpq(1, 3), mpq(1, 7), xs, ys, set())),
        ("book_conflicts", lambda k: k.book_conflicts(order, list(eu), list(ev))),
        ("min_line_dist2", lambda k: k.min_line_dist2(mpq(1, 3), mpq(1, 7), xs[:fewer], ys[:fewer])),
    ]


def best_of(fn, repeat):
    out = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out = min(out, time.perf_counter() - t)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'kernel':28s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, call in cases(rng):
        tp = best_of(lambda: call(py), args.repeat)
        if cy is None:
            print(f"{name:28s} {tp:10.4f} {'-':>10s} {'-':>8s}")
            continue
        if call(py) != call(cy):
            raise SystemExit(f"{name}: backends disagree")
        tc = best_of(lambda: call(cy), args.repeat)
        print(f"{name:28s} {tp:10.4f} {tc:10.4f} {tp / tc:8.2f}")


if __name__ == "__main__":
    main()
