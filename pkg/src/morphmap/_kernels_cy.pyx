# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend.

Twin of ``_kernels_py``: every arithmetic expression appears in the same
order so both backends produce bit-identical doubles.  Keep the two files
in lockstep when editing.
"""
from libc.math cimport INFINITY, sqrt
from libc.stdlib cimport free, malloc, realloc

BACKEND = "cython"


cdef double _ring_area_c(const double* xs, const double* ys, Py_ssize_t n) nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i, j
    j = n - 1
    for i in range(n):
        s += xs[j] * ys[i] - xs[i] * ys[j]
        j = i
    return 0.5 * s


def ring_area(double[:] xs, double[:] ys):
    """Signed shoelace area of an open ring (positive for CCW)."""
    return _ring_area_c(&xs[0], &ys[0], xs.shape[0])


cdef int _point_on_ring_c(double px, double py, const double* xs, const double* ys,
                          Py_ssize_t n) nogil:
    cdef Py_ssize_t i, j
    cdef double x1, y1, x2, y2, cross, lox, hix, loy, hiy
    j = n - 1
    for i in range(n):
        x1 = xs[j]
        y1 = ys[j]
        x2 = xs[i]
        y2 = ys[i]
        cross = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1)
        if cross == 0.0:
            if x1 <= x2:
                lox = x1
                hix = x2
            else:
                lox = x2
                hix = x1
            if y1 <= y2:
                loy = y1
                hiy = y2
            else:
                loy = y2
                hiy = y1
            if lox <= px <= hix and loy <= py <= hiy:
                return 1
        j = i
    return 0


def point_on_ring(double px, double py, double[:] xs, double[:] ys):
    """1 if (px, py) lies exactly on a ring edge, else 0."""
    return _point_on_ring_c(px, py, &xs[0], &ys[0], xs.shape[0])


cdef int _ring_crossings_c(double px, double py, const double* xs, const double* ys,
                           Py_ssize_t n) nogil:
    cdef Py_ssize_t i, j
    cdef int parity = 0
    cdef double x1, y1, x2, y2, xint
    j = n - 1
    for i in range(n):
        x1 = xs[j]
        y1 = ys[j]
        x2 = xs[i]
        y2 = ys[i]
        if (y1 > py) != (y2 > py):
            xint = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
            if px < xint:
                parity ^= 1
        j = i
    return parity


def ring_crossings(double px, double py, double[:] xs, double[:] ys):
    """Even-odd crossing parity (0 or 1) of a rightward ray from the point."""
    return _ring_crossings_c(px, py, &xs[0], &ys[0], xs.shape[0])


cdef inline double _seg_dist2_c(double px, double py, double x1, double y1,
                                double x2, double y2) nogil:
    cdef double dx = x2 - x1
    cdef double dy = y2 - y1
    cdef double len2 = dx * dx + dy * dy
    cdef double t, qx, qy, ex, ey
    if len2 == 0.0:
        ex = px - x1
        ey = py - y1
        return ex * ex + ey * ey
    t = ((px - x1) * dx + (py - y1) * dy) / len2
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    qx = x1 + t * dx
    qy = y1 + t * dy
    ex = px - qx
    ey = py - qy
    return ex * ex + ey * ey


cdef double _ring_min_dist2_c(double px, double py, const double* xs, const double* ys,
                              Py_ssize_t n) nogil:
    cdef double best = INFINITY
    cdef double d2
    cdef Py_ssize_t i, j
    j = n - 1
    for i in range(n):
        d2 = _seg_dist2_c(px, py, xs[j], ys[j], xs[i], ys[i])
        if d2 < best:
            best = d2
        j = i
    return best


def ring_min_dist2(double px, double py, double[:] xs, double[:] ys):
    """Squared minimum distance from the point to the ring's edges."""
    return _ring_min_dist2_c(px, py, &xs[0], &ys[0], xs.shape[0])


cdef double _clip_ring_ngon_area_c(const double* xs, const double* ys, Py_ssize_t n_in,
                                   double cx, double cy, double r,
                                   const double* cos_t, const double* sin_t,
                                   Py_ssize_t ns) nogil:
    # Sutherland-Hodgman against each n-gon edge.  A non-convex subject can
    # double its vertex count at a clip stage, so buffers grow on demand.
    cdef Py_ssize_t cap = 2 * n_in + 8
    cdef double* sub_x = <double*> malloc(cap * sizeof(double))
    cdef double* sub_y = <double*> malloc(cap * sizeof(double))
    cdef double* out_x = <double*> malloc(cap * sizeof(double))
    cdef double* out_y = <double*> malloc(cap * sizeof(double))
    cdef double* tmp
    cdef Py_ssize_t m = n_in
    cdef Py_ssize_t i, k, kn, nout, needed
    cdef double ex1, ey1, ex2, ey2, edx, edy, px, py, qx, qy, d1, d2, t, s, a
    if sub_x == NULL or sub_y == NULL or out_x == NULL or out_y == NULL:
        free(sub_x)
        free(sub_y)
        free(out_x)
        free(out_y)
        return -1.0
    for i in range(n_in):
        sub_x[i] = xs[i]
        sub_y[i] = ys[i]
    for k in range(ns):
        if m == 0:
            break
        needed = 2 * m + 2
        if needed > cap:
            cap = needed + needed
            out_x = <double*> realloc(out_x, cap * sizeof(double))
            out_y = <double*> realloc(out_y, cap * sizeof(double))
            sub_x = <double*> realloc(sub_x, cap * sizeof(double))
            sub_y = <double*> realloc(sub_y, cap * sizeof(double))
            if out_x == NULL or out_y == NULL or sub_x == NULL or sub_y == NULL:
                free(sub_x)
                free(sub_y)
                free(out_x)
                free(out_y)
                return -1.0
        kn = k + 1 if k + 1 < ns else 0
        ex1 = cx + r * cos_t[k]
        ey1 = cy + r * sin_t[k]
        ex2 = cx + r * cos_t[kn]
        ey2 = cy + r * sin_t[kn]
        edx = ex2 - ex1
        edy = ey2 - ey1
        nout = 0
        px = sub_x[m - 1]
        py = sub_y[m - 1]
        d1 = edx * (py - ey1) - edy * (px - ex1)
        for i in range(m):
            qx = sub_x[i]
            qy = sub_y[i]
            d2 = edx * (qy - ey1) - edy * (qx - ex1)
            if d2 >= 0.0:
                if d1 < 0.0:
                    t = d1 / (d1 - d2)
                    out_x[nout] = px + t * (qx - px)
                    out_y[nout] = py + t * (qy - py)
                    nout += 1
                out_x[nout] = qx
                out_y[nout] = qy
                nout += 1
            elif d1 >= 0.0:
                t = d1 / (d1 - d2)
                out_x[nout] = px + t * (qx - px)
                out_y[nout] = py + t * (qy - py)
                nout += 1
            px = qx
            py = qy
            d1 = d2
        tmp = sub_x
        sub_x = out_x
        out_x = tmp
        tmp = sub_y
        sub_y = out_y
        out_y = tmp
        m = nout
    a = 0.0
    if m >= 3:
        s = 0.0
        k = m - 1
        for i in range(m):
            s += sub_x[k] * sub_y[i] - sub_x[i] * sub_y[k]
            k = i
        a = 0.5 * s
        if a < 0.0:
            a = -a
    free(sub_x)
    free(sub_y)
    free(out_x)
    free(out_y)
    return a


def clip_ring_ngon_area(double[:] xs, double[:] ys, double cx, double cy, double r,
                        double[:] cos_t, double[:] sin_t):
    """Unsigned area of ring ∩ regular n-gon (Sutherland-Hodgman clip)."""
    cdef double a = _clip_ring_ngon_area_c(&xs[0], &ys[0], xs.shape[0], cx, cy, r,
                                           &cos_t[0], &sin_t[0], cos_t.shape[0])
    if a < 0.0:
        raise MemoryError()
    return a


cdef double _polyline_len_in_disk_c(const double* xs, const double* ys, Py_ssize_t n,
                                    double cx, double cy, double r) nogil:
    cdef double total = 0.0
    cdef Py_ssize_t i
    cdef double x1, y1, dx, dy, a, fx, fy, b, c, disc, sq, t0, t1, lo, hi
    for i in range(n - 1):
        x1 = xs[i]
        y1 = ys[i]
        dx = xs[i + 1] - x1
        dy = ys[i + 1] - y1
        a = dx * dx + dy * dy
        if a == 0.0:
            continue
        fx = x1 - cx
        fy = y1 - cy
        b = 2.0 * (fx * dx + fy * dy)
        c = fx * fx + fy * fy - r * r
        disc = b * b - 4.0 * a * c
        if disc <= 0.0:
            continue
        sq = sqrt(disc)
        t0 = (-b - sq) / (2.0 * a)
        t1 = (-b + sq) / (2.0 * a)
        lo = t0 if t0 > 0.0 else 0.0
        hi = t1 if t1 < 1.0 else 1.0
        if hi > lo:
            total += (hi - lo) * sqrt(a)
    return total


def polyline_len_in_disk(double[:] xs, double[:] ys, double cx, double cy, double r):
    """Total length of the polyline clipped to the exact disk."""
    return _polyline_len_in_disk_c(&xs[0], &ys[0], xs.shape[0], cx, cy, r)


def polyline_min_dist2(double px, double py, double[:] xs, double[:] ys):
    """Squared minimum distance from the point to the polyline."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef double best = INFINITY
    cdef double d2
    cdef Py_ssize_t i
    for i in range(n - 1):
        d2 = _seg_dist2_c(px, py, xs[i], ys[i], xs[i + 1], ys[i + 1])
        if d2 < best:
            best = d2
    return best


def best_split_scan(double[:] values, long long[:] labels, int n_classes):
    """Best threshold for one feature on a node's samples (see python twin)."""
    cdef Py_ssize_t n = values.shape[0]
    cdef long long total[16]
    cdef long long left[16]
    cdef int c
    cdef Py_ssize_t i
    cdef double nd, s, p, parent, nld, nrd, sl, sr, pl, pr, gl, gr, dec
    cdef double best_dec = -1.0
    cdef double best_thr = 0.0
    cdef double thr
    cdef long long nl, nr
    cdef int found = 0
    if n_classes > 16:
        raise ValueError("too many classes for split kernel")
    for c in range(n_classes):
        total[c] = 0
        left[c] = 0
    for i in range(n):
        total[labels[i]] += 1
    nd = <double> n
    s = 0.0
    for c in range(n_classes):
        p = (<double> total[c]) / nd
        s += p * p
    parent = 1.0 - s

    for i in range(n - 1):
        left[labels[i]] += 1
        if values[i] == values[i + 1]:
            continue
        nl = i + 1
        nr = n - nl
        nld = <double> nl
        nrd = <double> nr
        sl = 0.0
        sr = 0.0
        for c in range(n_classes):
            pl = (<double> left[c]) / nld
            sl += pl * pl
            pr = (<double> (total[c] - left[c])) / nrd
            sr += pr * pr
        gl = 1.0 - sl
        gr = 1.0 - sr
        dec = parent - (nld / nd) * gl - (nrd / nd) * gr
        if dec > best_dec:
            best_dec = dec
            thr = 0.5 * (values[i] + values[i + 1])
            if thr >= values[i + 1]:
                thr = values[i]
            best_thr = thr
            found = 1
    if not found:
        return 0, 0.0, 0.0
    return 1, best_thr, best_dec


def buffer_buildings(double[:] ring_x, double[:] ring_y, long long[:] ring_off,
                     long long[:] bld_ring_start, double[:] bld_bbox, double[:] bld_area,
                     long long[:] cand, double cx, double cy, double r, double r_inner,
                     double[:] cos_t, double[:] sin_t,
                     unsigned char[:] out_flag, double[:] out_clip):
    """Disk-membership flag and clipped footprint area per candidate building."""
    cdef Py_ssize_t ncand = cand.shape[0]
    cdef Py_ssize_t ns = cos_t.shape[0]
    cdef double r2 = r * r
    cdef double rin2 = r_inner * r_inner
    cdef int count = 0
    cdef int oom = 0
    cdef Py_ssize_t ci, b, r0, r1, ri, lo, hi
    cdef double minx, miny, maxx, maxy, dx, dy, fdx, fdy, area, part
    cdef int hit, parity
    with nogil:
        for ci in range(ncand):
            b = <Py_ssize_t> cand[ci]
            minx = bld_bbox[4 * b]
            miny = bld_bbox[4 * b + 1]
            maxx = bld_bbox[4 * b + 2]
            maxy = bld_bbox[4 * b + 3]
            dx = minx - cx
            if cx - maxx > dx:
                dx = cx - maxx
            if dx < 0.0:
                dx = 0.0
            dy = miny - cy
            if cy - maxy > dy:
                dy = cy - maxy
            if dy < 0.0:
                dy = 0.0
            if dx * dx + dy * dy > r2:
                out_flag[ci] = 0
                out_clip[ci] = 0.0
                continue
            fdx = cx - minx
            if maxx - cx > fdx:
                fdx = maxx - cx
            fdy = cy - miny
            if maxy - cy > fdy:
                fdy = maxy - cy
            r0 = <Py_ssize_t> bld_ring_start[b]
            r1 = <Py_ssize_t> bld_ring_start[b + 1]
            if fdx * fdx + fdy * fdy <= rin2:
                out_flag[ci] = 1
                out_clip[ci] = bld_area[b]
                count += 1
                continue
            hit = 0
            for ri in range(r0, r1):
                lo = <Py_ssize_t> ring_off[ri]
                hi = <Py_ssize_t> ring_off[ri + 1]
                if _ring_min_dist2_c(cx, cy, &ring_x[lo], &ring_y[lo], hi - lo) <= r2:
                    hit = 1
                    break
            if not hit:
                parity = 0
                for ri in range(r0, r1):
                    lo = <Py_ssize_t> ring_off[ri]
                    hi = <Py_ssize_t> ring_off[ri + 1]
                    parity ^= _ring_crossings_c(cx, cy, &ring_x[lo], &ring_y[lo], hi - lo)
                hit = parity
            if not hit:
                out_flag[ci] = 0
                out_clip[ci] = 0.0
                continue
            lo = <Py_ssize_t> ring_off[r0]
            hi = <Py_ssize_t> ring_off[r0 + 1]
            area = _clip_ring_ngon_area_c(&ring_x[lo], &ring_y[lo], hi - lo, cx, cy, r,
                                          &cos_t[0], &sin_t[0], ns)
            if area < 0.0:
                oom = 1
                break
            for ri in range(r0 + 1, r1):
                lo = <Py_ssize_t> ring_off[ri]
                hi = <Py_ssize_t> ring_off[ri + 1]
                part = _clip_ring_ngon_area_c(&ring_x[lo], &ring_y[lo], hi - lo, cx, cy, r,
                                              &cos_t[0], &sin_t[0], ns)
                if part < 0.0:
                    oom = 1
                    break
                area -= part
            if oom:
                break
            if area < 0.0:
                area = 0.0
            out_flag[ci] = 1
            out_clip[ci] = area
            count += 1
    if oom:
        raise MemoryError()
    return count


def buffer_roads(double[:] line_x, double[:] line_y, long long[:] line_off,
                 long long[:] cand, double cx, double cy, double r, double[:] out_len):
    """In-disk clipped length per candidate road polyline."""
    cdef Py_ssize_t ncand = cand.shape[0]
    cdef Py_ssize_t ci, s, lo, hi
    with nogil:
        for ci in range(ncand):
            s = <Py_ssize_t> cand[ci]
            lo = <Py_ssize_t> line_off[s]
            hi = <Py_ssize_t> line_off[s + 1]
            out_len[ci] = _polyline_len_in_disk_c(&line_x[lo], &line_y[lo], hi - lo, cx, cy, r)
