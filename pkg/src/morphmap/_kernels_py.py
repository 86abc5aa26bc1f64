"""Pure-Python kernel backend.

Reference implementation of the numeric hot loops.  The compiled backend in
``_kernels_cy.pyx`` mirrors every function here operation for operation, in
the same order, so both backends produce bit-identical doubles.  Any change
to an arithmetic expression in this file must be applied to the .pyx twin.

All coordinate inputs are 1-D float64 numpy arrays; rings are open (the
closing vertex is implicit).  These functions are internal: argument
validation happens in the calling modules.
"""
from __future__ import annotations

import math

__all__ = [
    "BACKEND",
    "ring_area",
    "point_on_ring",
    "ring_crossings",
    "ring_min_dist2",
    "clip_ring_ngon_area",
    "polyline_len_in_disk",
    "polyline_min_dist2",
    "best_split_scan",
    "buffer_buildings",
    "buffer_roads",
]

BACKEND = "python"


def ring_area(xs, ys) -> float:
    """Signed shoelace area of an open ring (positive for CCW)."""
    xs = xs.tolist() if hasattr(xs, "tolist") else list(xs)
    ys = ys.tolist() if hasattr(ys, "tolist") else list(ys)
    n = len(xs)
    s = 0.0
    j = n - 1
    for i in range(n):
        s += xs[j] * ys[i] - xs[i] * ys[j]
        j = i
    return 0.5 * s


def point_on_ring(px, py, xs, ys) -> int:
    """1 if (px, py) lies exactly on a ring edge, else 0."""
    xs = xs.tolist() if hasattr(xs, "tolist") else list(xs)
    ys = ys.tolist() if hasattr(ys, "tolist") else list(ys)
    n = len(xs)
    j = n - 1
    for i in range(n):
        x1 = xs[j]
        y1 = ys[j]
        x2 = xs[i]
        y2 = ys[i]
        cross = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1)
        if cross == 0.0:
            lox, hix = (x1, x2) if x1 <= x2 else (x2, x1)
            loy, hiy = (y1, y2) if y1 <= y2 else (y2, y1)
            if lox <= px <= hix and loy <= py <= hiy:
                return 1
        j = i
    return 0


def ring_crossings(px, py, xs, ys) -> int:
    """Even-odd crossing parity (0 or 1) of a rightward ray from the point."""
    xs = xs.tolist() if hasattr(xs, "tolist") else list(xs)
    ys = ys.tolist() if hasattr(ys, "tolist") else list(ys)
    n = len(xs)
    parity = 0
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


def ring_min_dist2(px, py, xs, ys) -> float:
    """Squared minimum distance from the point to the ring's edges."""
    xs = xs.tolist() if hasattr(xs, "tolist") else list(xs)
    ys = ys.tolist() if hasattr(ys, "tolist") else list(ys)
    n = len(xs)
    best = math.inf
    j = n - 1
    for i in range(n):
        d2 = _seg_dist2(px, py, xs[j], ys[j], xs[i], ys[i])
        if d2 < best:
            best = d2
        j = i
    return best


def _seg_dist2(px, py, x1, y1, x2, y2) -> float:
    dx = x2 - x1
    dy = y2 - y1
    len2 = dx * dx + dy * dy
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


def clip_ring_ngon_area(xs, ys, cx, cy, r, cos_t, sin_t) -> float:
    """Unsigned area of ring ∩ regular n-gon (Sutherland-Hodgman clip).

    cos_t/sin_t are the shared unit-circle vertex tables; the n-gon vertex k
    sits at (cx + r*cos_t[k], cy + r*sin_t[k]), ordered CCW.
    """
    sub_x = xs.tolist() if hasattr(xs, "tolist") else list(xs)
    sub_y = ys.tolist() if hasattr(ys, "tolist") else list(ys)
    cos_t = cos_t.tolist() if hasattr(cos_t, "tolist") else list(cos_t)
    sin_t = sin_t.tolist() if hasattr(sin_t, "tolist") else list(sin_t)
    ns = len(cos_t)
    for k in range(ns):
        kn = k + 1 if k + 1 < ns else 0
        ex1 = cx + r * cos_t[k]
        ey1 = cy + r * sin_t[k]
        ex2 = cx + r * cos_t[kn]
        ey2 = cy + r * sin_t[kn]
        edx = ex2 - ex1
        edy = ey2 - ey1
        out_x = []
        out_y = []
        m = len(sub_x)
        if m == 0:
            return 0.0
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
                    out_x.append(px + t * (qx - px))
                    out_y.append(py + t * (qy - py))
                out_x.append(qx)
                out_y.append(qy)
            elif d1 >= 0.0:
                t = d1 / (d1 - d2)
                out_x.append(px + t * (qx - px))
                out_y.append(py + t * (qy - py))
            px = qx
            py = qy
            d1 = d2
        sub_x = out_x
        sub_y = out_y
    n = len(sub_x)
    if n < 3:
        return 0.0
    s = 0.0
    j = n - 1
    for i in range(n):
        s += sub_x[j] * sub_y[i] - sub_x[i] * sub_y[j]
        j = i
    a = 0.5 * s
    return a if a >= 0.0 else -a


def polyline_len_in_disk(xs, ys, cx, cy, r) -> float:
    """Total length of the polyline clipped to the exact disk."""
    xs = xs.tolist() if hasattr(xs, "tolist") else list(xs)
    ys = ys.tolist() if hasattr(ys, "tolist") else list(ys)
    n = len(xs)
    total = 0.0
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
        sq = math.sqrt(disc)
        t0 = (-b - sq) / (2.0 * a)
        t1 = (-b + sq) / (2.0 * a)
        lo = t0 if t0 > 0.0 else 0.0
        hi = t1 if t1 < 1.0 else 1.0
        if hi > lo:
            total += (hi - lo) * math.sqrt(a)
    return total


def polyline_min_dist2(px, py, xs, ys) -> float:
    """Squared minimum distance from the point to the polyline."""
    xs = xs.tolist() if hasattr(xs, "tolist") else list(xs)
    ys = ys.tolist() if hasattr(ys, "tolist") else list(ys)
    n = len(xs)
    best = math.inf
    for i in range(n - 1):
        d2 = _seg_dist2(px, py, xs[i], ys[i], xs[i + 1], ys[i + 1])
        if d2 < best:
            best = d2
    return best


def best_split_scan(values, labels, n_classes):
    """Best threshold for one feature on a node's samples.

    values must be sorted ascending with labels aligned.  Returns
    (found, threshold, decrease) where decrease is the weighted Gini
    decrease; found is 0 when no boundary between distinct values exists.
    Zero-decrease boundaries are still reported: the caller decides whether
    an impure node takes them.
    """
    values = values.tolist() if hasattr(values, "tolist") else list(values)
    labels = labels.tolist() if hasattr(labels, "tolist") else list(labels)
    n = len(values)
    total = [0] * n_classes
    for lab in labels:
        total[lab] += 1
    nd = float(n)
    s = 0.0
    for c in range(n_classes):
        p = total[c] / nd
        s += p * p
    parent = 1.0 - s

    left = [0] * n_classes
    best_dec = -1.0
    best_thr = 0.0
    found = 0
    for i in range(n - 1):
        left[labels[i]] += 1
        if values[i] == values[i + 1]:
            continue
        nl = i + 1
        nr = n - nl
        nld = float(nl)
        nrd = float(nr)
        sl = 0.0
        sr = 0.0
        for c in range(n_classes):
            pl = left[c] / nld
            sl += pl * pl
            pr = (total[c] - left[c]) / nrd
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


def buffer_buildings(
    ring_x,
    ring_y,
    ring_off,
    bld_ring_start,
    bld_bbox,
    bld_area,
    cand,
    cx,
    cy,
    r,
    r_inner,
    cos_t,
    sin_t,
    out_flag,
    out_clip,
) -> int:
    """Disk-membership flag and clipped footprint area per candidate building.

    Packed layout: ring_off indexes into ring_x/ring_y; building b owns rings
    bld_ring_start[b]..bld_ring_start[b+1]-1, the first being the exterior.
    bld_bbox is flat (minx, miny, maxx, maxy) per building.  r_inner is the
    n-gon apothem: a building whose bbox lies within it needs no clipping.
    Returns the number of intersecting buildings.
    """
    r2 = r * r
    count = 0
    for ci in range(len(cand)):
        b = int(cand[ci])
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
        r0 = bld_ring_start[b]
        r1 = bld_ring_start[b + 1]
        if fdx * fdx + fdy * fdy <= r_inner * r_inner:
            out_flag[ci] = 1
            out_clip[ci] = bld_area[b]
            count += 1
            continue
        hit = 0
        for ri in range(r0, r1):
            lo = ring_off[ri]
            hi = ring_off[ri + 1]
            if ring_min_dist2(cx, cy, ring_x[lo:hi], ring_y[lo:hi]) <= r2:
                hit = 1
                break
        if not hit:
            parity = 0
            for ri in range(r0, r1):
                lo = ring_off[ri]
                hi = ring_off[ri + 1]
                parity ^= ring_crossings(cx, cy, ring_x[lo:hi], ring_y[lo:hi])
            hit = parity
        if not hit:
            out_flag[ci] = 0
            out_clip[ci] = 0.0
            continue
        lo = ring_off[r0]
        hi = ring_off[r0 + 1]
        area = clip_ring_ngon_area(ring_x[lo:hi], ring_y[lo:hi], cx, cy, r, cos_t, sin_t)
        for ri in range(r0 + 1, r1):
            lo = ring_off[ri]
            hi = ring_off[ri + 1]
            area -= clip_ring_ngon_area(ring_x[lo:hi], ring_y[lo:hi], cx, cy, r, cos_t, sin_t)
        if area < 0.0:
            area = 0.0
        out_flag[ci] = 1
        out_clip[ci] = area
        count += 1
    return count


def buffer_roads(line_x, line_y, line_off, cand, cx, cy, r, out_len) -> None:
    """In-disk clipped length per candidate road polyline."""
    for ci in range(len(cand)):
        s = int(cand[ci])
        lo = line_off[s]
        hi = line_off[s + 1]
        out_len[ci] = polyline_len_in_disk(line_x[lo:hi], line_y[lo:hi], cx, cy, r)
