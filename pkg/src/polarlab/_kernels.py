"""Compiled inner loops for the support/radial transforms.

Both transforms reduce to evaluating the support function of a finite point
set, some of whose points sit at infinity along a grid direction:

* support from radial samples: points ``rho_k u_k``;
* radial from support samples: ``1 / support`` of the points ``u_k / h_k``.

The dense kernels work on any direction set through a neighbour table
(``nbr[i, :]`` lists the ``k`` with ``<u_i, u_k> > 0``, padding has cosine 0).
The planar kernel exploits the equally spaced circle grid: convex hull plus a
rotating-calipers sweep.
"""
import numpy as np
from numba import njit

INF = np.inf
_POS = 1e-12


@njit(cache=True)
def dense_radial_from_support(h, nbr, cosines):
    n, m = nbr.shape
    out = np.empty(n)
    for i in range(n):
        best = INF
        for j in range(m):
            c = cosines[i, j]
            if c <= 0.0:
                continue
            q = h[nbr[i, j]] / c
            if q < best:
                best = q
        out[i] = best
    return out


@njit(cache=True)
def dense_support_from_radial(rho, nbr, cosines):
    n, m = nbr.shape
    out = np.empty(n)
    for i in range(n):
        best = 0.0
        for j in range(m):
            c = cosines[i, j]
            if c <= 0.0:
                continue
            r = rho[nbr[i, j]]
            if r == INF:
                best = INF
                break
            q = r * c
            if q > best:
                best = q
        out[i] = best
    return out


@njit(cache=True)
def _cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


@njit(cache=True)
def _hull(px, py):
    # Andrew's monotone chain; returns CCW vertex indices, collinear points dropped.
    m = px.shape[0]
    order = np.argsort(px * 1.0 + 0.0)
    # stable tie-break on y
    keys = np.empty(m)
    for i in range(m):
        keys[i] = py[order[i]]
    i = 0
    while i < m:
        j = i
        while j + 1 < m and px[order[j + 1]] == px[order[i]]:
            j += 1
        if j > i:
            seg = order[i:j + 1].copy()
            sub = np.argsort(keys[i:j + 1])
            for q in range(j - i + 1):
                order[i + q] = seg[sub[q]]
        i = j + 1
    out = np.empty(2 * m + 1, dtype=np.int64)
    k = 0
    for ii in range(m):
        p = order[ii]
        while k >= 2 and _cross(px[out[k - 2]], py[out[k - 2]], px[out[k - 1]], py[out[k - 1]], px[p], py[p]) <= 0.0:
            k -= 1
        out[k] = p
        k += 1
    lower = k + 1
    for ii in range(m - 2, -1, -1):
        p = order[ii]
        while k >= lower and _cross(px[out[k - 2]], py[out[k - 2]], px[out[k - 1]], py[out[k - 1]], px[p], py[p]) <= 0.0:
            k -= 1
        out[k] = p
        k += 1
    if m == 1:
        return out[:1]
    return out[:k - 1]


@njit(cache=True)
def planar_support(px, py, at_inf, cos_t, sin_t):
    """Support of ``conv({0} U points)`` plus rays ``u_k`` where ``at_inf[k]``.

    ``px, py`` are indexed like the grid; entries flagged ``at_inf`` are rays
    along grid direction ``k`` and their coordinates are ignored.
    """
    n = cos_t.shape[0]
    out = np.zeros(n)

    # rays: support is infinite wherever some ray has a positive inner product
    n_inf = 0
    for k in range(n):
        if at_inf[k]:
            n_inf += 1
    if n_inf > 0:
        # cyclic distance (in steps) to the nearest ray direction
        dist = np.full(n, n)
        last = -1
        for t in range(2 * n):
            k = t % n
            if at_inf[k]:
                last = t
            if last >= 0 and t - last < dist[k]:
                dist[k] = t - last
        nxt = -1
        for t in range(2 * n - 1, -1, -1):
            k = t % n
            if at_inf[k]:
                nxt = t
            if nxt >= 0 and nxt - t < dist[k]:
                dist[k] = nxt - t
        for k in range(n):
            # cos of the angle to the nearest ray
            c = cos_t[dist[k] % n]
            if dist[k] < n and c > _POS:
                out[k] = INF

    # finite points together with the origin
    m = 1
    for k in range(n):
        if not at_inf[k]:
            m += 1
    qx = np.zeros(m)
    qy = np.zeros(m)
    j = 1
    for k in range(n):
        if not at_inf[k]:
            qx[j] = px[k]
            qy[j] = py[k]
            j += 1
    hull = _hull(qx, qy)
    v = hull.shape[0]
    hx = np.empty(v)
    hy = np.empty(v)
    for a in range(v):
        hx[a] = qx[hull[a]]
        hy[a] = qy[hull[a]]

    # direction 0 by brute force, then sweep CCW
    cur = 0
    best = hx[0] * cos_t[0] + hy[0] * sin_t[0]
    for a in range(1, v):
        val = hx[a] * cos_t[0] + hy[a] * sin_t[0]
        if val > best:
            best = val
            cur = a
    for k in range(n):
        c = cos_t[k]
        s = sin_t[k]
        val = hx[cur] * c + hy[cur] * s
        steps = 0
        while steps < v:
            nxt = cur + 1
            if nxt == v:
                nxt = 0
            nv = hx[nxt] * c + hy[nxt] * s
            if nv > val:
                cur = nxt
                val = nv
                steps += 1
            else:
                break
        if out[k] != INF:
            out[k] = val if val > 0.0 else 0.0
    return out
