# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; same API and results as ``_kernels_py``."""
from libc.stdlib cimport malloc, free
from gmpy2 import RoundAwayZero, context, lcm, mpfr, mpq, mpz


cpdef int orient(object ax, object ay, object bx, object by, object cx, object cy):
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


cdef bint _on_closed(object ax, object ay, object bx, object by, object px, object py):
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


cpdef bint seg_cross(object ax, object ay, object bx, object by,
                     object cx, object cy, object dx, object dy, int shared):
    cdef int o1, o2, o3, o4
    if shared:
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


cdef inline int _shared_code(long u1, long v1, long u2, long v2):
    if u1 == u2:
        return 1
    if u1 == v2:
        return 2
    if v1 == u2:
        return 3
    if v1 == v2:
        return 4
    return 0


def crossing_pairs(list segs, bint first_only=False, Py_ssize_t start=0):
    cdef Py_ssize_t m = len(segs), i, j
    cdef long u1, v1, u2, v2
    cdef int code
    out = []
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


cdef inline object _slope(object dx, object dy):
    return None if dx == 0 else dy / dx


def collinear_triples(list xs, list ys, bint first_only=False):
    """Collinear index triples (i, j, l), i < j < l, found by grouping slopes from each point."""
    cdef list out = []
    cdef Py_ssize_t n = len(xs), i, j, a, b
    cdef dict groups
    cdef list members
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


def point_on_pair_line(object px, object py, list xs, list ys, skip):
    """First pair (i, j), i < j, whose line passes through p, or None."""
    cdef dict seen = {}
    cdef Py_ssize_t i, j
    cdef object dx, dy, key
    cdef list bucket
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
    cdef Py_ssize_t m = len(eu), e, f
    cdef int *a = <int *> malloc(m * sizeof(int))
    cdef int *b = <int *> malloc(m * sizeof(int))
    cdef int p, q, ae, be, af, bf
    nbrs = [[] for _ in range(m)]
    try:
        for e in range(m):
            p = pos[eu[e]]
            q = pos[ev[e]]
            if p > q:
                p, q = q, p
            a[e] = p
            b[e] = q
        for e in range(m):
            ae = a[e]
            be = b[e]
            for f in range(e + 1, m):
                af = a[f]
                bf = b[f]
                if (ae < af < be < bf) or (af < ae < bf < be):
                    nbrs[e].append(f)
                    nbrs[f].append(e)
    finally:
        free(a)
        free(b)
    return nbrs


def greedy_clique(nbrs):
    cdef Py_ssize_t m = len(nbrs)
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


cdef bint _colour_rec(int idx, int nused, int m, int ncol, int *order,
                      int *colour, int **adj, int *deg):
    cdef int e, c, i, limit
    cdef long long taken = 0
    if idx == m:
        return True
    e = order[idx]
    for i in range(deg[e]):
        c = colour[adj[e][i]]
        if c >= 0:
            taken |= (<long long> 1) << c
    limit = nused + 1
    if limit > ncol:
        limit = ncol
    for c in range(limit):
        if not (taken >> c) & 1:
            colour[e] = c
            if _colour_rec(idx + 1, nused if nused > c + 1 else c + 1, m, ncol,
                           order, colour, adj, deg):
                return True
    colour[e] = -1
    return False


def colour_graph(nbrs, int ncol):
    cdef int m = len(nbrs), e, i
    if m == 0:
        return []
    if ncol <= 0:
        return None
    if ncol > 62:
        raise ValueError("at most 62 colours")
    pyorder = sorted(range(m), key=lambda x: (-len(nbrs[x]), x))
    cdef int *order = <int *> malloc(m * sizeof(int))
    cdef int *colour = <int *> malloc(m * sizeof(int))
    cdef int *deg = <int *> malloc(m * sizeof(int))
    cdef int **adj = <int **> malloc(m * sizeof(int *))
    try:
        for e in range(m):
            order[e] = pyorder[e]
            colour[e] = -1
            deg[e] = len(nbrs[e])
            adj[e] = <int *> malloc((deg[e] + 1) * sizeof(int))
            for i in range(deg[e]):
                adj[e][i] = nbrs[e][i]
        if _colour_rec(0, 0, m, ncol, order, colour, adj, deg):
            return [colour[e] for e in range(m)]
        return None
    finally:
        for e in range(m):
            free(adj[e])
        free(adj)
        free(order)
        free(colour)
        free(deg)


def min_line_dist2(object px, object py, list xs, list ys):
    """Least squared distance from p to a line through two of the points, or None.

    Coordinates go to integers over one common denominator. A 96-bit float pass
    with a rigorous error bound prunes the pairs; the survivors are compared
    exactly by cross-multiplication, so no fraction is ever normalised in the loop.
    """
    cdef Py_ssize_t n = len(xs), i, j
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
