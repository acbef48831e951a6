"""Pure-Python hot kernels. ``_kernels.pyx`` mirrors this module exactly."""

from gmpy2 import RoundAwayZero, context, lcm, mpfr, mpq, mpz


def orient(ax, ay, bx, by, cx, cy):
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def _on_closed(ax, ay, bx, by, px, py):
    # p known collinear with a, b
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def seg_cross(ax, ay, bx, by, cx, cy, dx, dy, shared):
    """Closed-segment intersection other than at a shared endpoint.

    ``shared`` is 0 when the segments have no common endpoint, 1 when a == c,
    2 when a == d, 3 when b == c, 4 when b == d.
    """
    if shared:
        # common endpoint p, other endpoints q (first) and r (second)
        if shared == 1:
            px, py, qx, qy, rx, ry = ax, ay, bx, by, dx, dy
        elif shared == 2:
            px, py, qx, qy, rx, ry = ax, ay, bx, by, cx, cy
        elif shared == 3:
            px, py, qx, qy, rx, ry = bx, by, ax, ay, dx, dy
        else:
            px, py, qx, qy, rx, ry = bx, by, ax, ay, cx, cy
        if orient(px, py, qx, qy, rx, ry) != 0:
            return False
        return (qx - px) * (rx - px) + (qy - py) * (ry - py) > 0
    o1 = orient(ax, ay, bx, by, cx, cy)
    o2 = orient(ax, ay, bx, by, dx, dy)
    o3 = orient(cx, cy, dx, dy, ax, ay)
    o4 = orient(cx, cy, dx, dy, bx, by)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _on_closed(ax, ay, bx, by, cx, cy):
        return True
    if o2 == 0 and _on_closed(ax, ay, bx, by, dx, dy):
        return True
    if o3 == 0 and _on_closed(cx, cy, dx, dy, ax, ay):
        return True
    if o4 == 0 and _on_closed(cx, cy, dx, dy, bx, by):
        return True
    return False


def _shared_code(u1, v1, u2, v2):
    if u1 == u2:
        return 1
    if u1 == v2:
        return 2
    if v1 == u2:
        return 3
    if v1 == v2:
        return 4
    return 0


def crossing_pairs(segs, first_only=False, start=0):
    """Crossing pairs among ``segs`` = [(u, v, ax, ay, bx, by), ...].

    Only pairs (i, j) with j >= start are tested, so callers can check a batch
    of new segments appended after position ``start`` against everything.
    """
    out = []
    m = len(segs)
    for j in range(max(start, 1), m):
        u2, v2, cx, cy, dx, dy = segs[j]
        for i in range(j):
            u1, v1, ax, ay, bx, by = segs[i]
            if u1 == u2 and v1 == v2:
                continue
            code = _shared_code(u1, v1, u2, v2)
            if seg_cross(ax, ay, bx, by, cx, cy, dx, dy, code):
                out.append((i, j))
                if first_only:
                    return out
    return out


def _slope(dx, dy):
    return None if dx == 0 else dy / dx


def collinear_triples(xs, ys, first_only=False):
    """Collinear index triples (i, j, l), i < j < l, found by grouping slopes from each point."""
    out = []
    n = len(xs)
    for i in range(n):
        groups = {}
        for j in range(i + 1, n):
            groups.setdefault(_slope(xs[j] - xs[i], ys[j] - ys[i]), []).append(j)
        for members in groups.values():
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    out.append((i, members[a], members[b]))
                    if first_only:
                        return out
    if not first_only:
        out.sort()
    return out


def point_on_pair_line(px, py, xs, ys, skip):
    """First pair (i, j), i < j, whose line passes through p, or None.

    ``skip`` is a set of index pairs (i, j), i < j, that are exempt. A point
    equal to one of the inputs reports that index twice.
    """
    seen = {}
    for i in range(len(xs)):
        dx = xs[i] - px
        dy = ys[i] - py
        if dx == 0 and dy == 0:
            return (i, i)
        key = _slope(dx, dy)
        bucket = seen.get(key)
        if bucket is None:
            seen[key] = [i]
            continue
        for j in bucket:
            if (j, i) not in skip:
                return (j, i)
        bucket.append(i)
    return None


def book_conflicts(pos, eu, ev):
    """Conflict lists of the edges under the vertex order ``pos``."""
    m = len(eu)
    a = [0] * m
    b = [0] * m
    for e in range(m):
        p, q = pos[eu[e]], pos[ev[e]]
        if p > q:
            p, q = q, p
        a[e] = p
        b[e] = q
    nbrs = [[] for _ in range(m)]
    for e in range(m):
        ae, be = a[e], b[e]
        for f in range(e + 1, m):
            af, bf = a[f], b[f]
            if (ae < af < be < bf) or (af < ae < bf < be):
                nbrs[e].append(f)
                nbrs[f].append(e)
    return nbrs


def greedy_clique(nbrs):
    """Size of a greedily grown clique (a lower bound on the chromatic number)."""
    m = len(nbrs)
    best = 1 if m else 0
    sets = [set(x) for x in nbrs]
    order = sorted(range(m), key=lambda e: -len(nbrs[e]))
    for start in order[: min(m, 8)]:
        clique = [start]
        cand = set(sets[start])
        while cand:
            nxt = max(cand, key=lambda e: (len(sets[e] & cand), -e))
            clique.append(nxt)
            cand &= sets[nxt]
        if len(clique) > best:
            best = len(clique)
    return best


def colour_graph(nbrs, ncol):
    """Proper colouring with colours 0..ncol-1 by backtracking, or None."""
    m = len(nbrs)
    if m == 0:
        return []
    if ncol <= 0:
        return None
    order = sorted(range(m), key=lambda e: (-len(nbrs[e]), e))
    colour = [-1] * m

    def rec(idx, nused):
        if idx == m:
            return True
        e = order[idx]
        taken = 0
        for f in nbrs[e]:
            c = colour[f]
            if c >= 0:
                taken |= 1 << c
        # a fresh colour is only ever the next unused one (colour symmetry)
        limit = min(ncol, nused + 1)
        for c in range(limit):
            if not taken >> c & 1:
                colour[e] = c
                if rec(idx + 1, max(nused, c + 1)):
                    return True
        colour[e] = -1
        return False

    if rec(0, 0):
        return colour
    return None


def min_line_dist2(px, py, xs, ys):
    """Least squared distance from p to a line through two of the points, or None.

    Coordinates go to integers over one common denominator. A 96-bit float pass
    with a rigorous error bound prunes the pairs; the survivors are compared
    exactly by cross-multiplication, so no fraction is ever normalised in the loop.
    """
    n = len(xs)
    if n < 2:
        return None
    rel = [mpq(x - px) for x in xs] + [mpq(y - py) for y in ys]
    den = mpz(1)
    for q in rel:
        den = lcm(den, q.denominator)
    ix = [q.numerator * (den // q.denominator) for q in rel[:n]]
    iy = [q.numerator * (den // q.denominator) for q in rel[n:]]
    with context(precision=96, round=RoundAwayZero):
        fx = [mpfr(v) for v in ix]
        fy = [mpfr(v) for v in iy]
        tol = mpfr(2) ** -88
        shrink = 1 - mpfr(2) ** -80
        grow = 1 + mpfr(2) ** -80
        bounds = []
        cap = None
        for i in range(n):
            ax = ix[i]
            ay = iy[i]
            fax = fx[i]
            fay = fy[i]
            for j in range(i + 1, n):
                dx = ix[j] - ax
                dy = iy[j] - ay
                if dx == 0 and dy == 0:
                    continue
                fdx = mpfr(dx)
                fdy = mpfr(dy)
                p1 = fax * fdy
                p2 = fay * fdx
                c = abs(p1 - p2)
                err = (abs(p1) + abs(p2)) * tol
                d = fdx * fdx + fdy * fdy
                lo = c - err
                lo = lo * lo / (d * (1 + tol)) * shrink if lo > 0 else mpfr(0)
                hi = (c + err) * (c + err) / (d * (1 - tol)) * grow
                if cap is None or hi < cap:
                    cap = hi
                bounds.append((lo, i, j))
    best_c = None
    best_d = mpz(1)
    for lo, i, j in bounds:
        if lo > cap:
            continue
        ax = ix[i]
        ay = iy[i]
        dx = ix[j] - ax
        dy = iy[j] - ay
        c = ax * dy - ay * dx
        c = c * c
        d = dx * dx + dy * dy
        if best_c is None or c * best_d < best_c * d:
            best_c = c
            best_d = d
            if c == 0:
                return mpq(0)
    if best_c is None:
        return None
    return mpq(best_c, best_d * den * den)
