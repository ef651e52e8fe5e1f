"""Hot numeric kernels: numba ``@njit`` versions plus pure-numpy fallbacks.

Public dispatchers at the bottom pick the implementation from the active
backend (see :mod:`helilink.backend`).  All kernels are deterministic and
thread-count independent: parallel loops write per-row partials that are
reduced afterwards in a fixed sequential order.

Curve conventions: a closed polyline with ``M`` vertices is passed as an
``(M, 3)`` float array *without* a repeated closing vertex; segment ``i``
runs from vertex ``i`` to vertex ``(i + 1) % M``.
"""

import numpy as np

from .backend import USE_NUMBA, njit, prange

FOUR_PI = 4.0 * np.pi


# ---------------------------------------------------------------------------
# prime-cycle enumeration (canonical words of fixed length)
# ---------------------------------------------------------------------------

def _enum_python(n, edge_src, edge_dst, out_start, out_list, out_words,
                 count_only):
    """Plain-python twin of the enumeration kernel (numpy backend)."""
    n_edges = edge_src.shape[0]
    count = 0
    word = [0] * n
    if n == 1:
        for first in range(n_edges):
            if edge_dst[first] == edge_src[first]:
                if not count_only:
                    out_words[count, 0] = first
                count += 1
        return count
    choice = [0] * n
    for first in range(n_edges):
        v0 = edge_src[first]
        word[0] = first
        depth = 1
        choice[1] = out_start[edge_dst[first]]
        while depth >= 1:
            vtx = edge_dst[word[depth - 1]]
            c = choice[depth]
            if c >= out_start[vtx + 1]:
                depth -= 1
                if depth >= 1:
                    choice[depth] += 1
                continue
            e = out_list[c]
            if e < first:
                choice[depth] += 1
                continue
            word[depth] = e
            if depth == n - 1:
                if edge_dst[e] == v0 and _canon_python(word, n):
                    if not count_only:
                        for i in range(n):
                            out_words[count, i] = word[i]
                    count += 1
                choice[depth] += 1
            else:
                depth += 1
                choice[depth] = out_start[edge_dst[e]]
    return count


def _canon_python(word, n):
    # keep word iff strictly smaller than every proper rotation
    for k in range(1, n):
        equal = True
        for i in range(n):
            a = word[(i + k) % n]
            b = word[i]
            if a != b:
                equal = False
                if a < b:
                    return False
                break
        if equal:            # word is periodic: a power of a shorter word
            return False
    return True


if USE_NUMBA:

    @njit(cache=True)
    def _canon_numba(word, n):
        for k in range(1, n):
            equal = True
            for i in range(n):
                a = word[(i + k) % n]
                b = word[i]
                if a != b:
                    equal = False
                    if a < b:
                        return False
                    break
            if equal:
                return False
        return True

    @njit(cache=True)
    def _enum_numba(n, edge_src, edge_dst, out_start, out_list, out_words,
                    count_only):
        n_edges = edge_src.shape[0]
        count = 0
        word = np.zeros(n, np.int64)
        if n == 1:
            for first in range(n_edges):
                if edge_dst[first] == edge_src[first]:
                    if not count_only:
                        out_words[count, 0] = first
                    count += 1
            return count
        choice = np.zeros(n, np.int64)
        for first in range(n_edges):
            v0 = edge_src[first]
            word[0] = first
            depth = 1
            choice[1] = out_start[edge_dst[first]]
            while depth >= 1:
                vtx = edge_dst[word[depth - 1]]
                c = choice[depth]
                if c >= out_start[vtx + 1]:
                    depth -= 1
                    if depth >= 1:
                        choice[depth] += 1
                    continue
                e = out_list[c]
                if e < first:
                    choice[depth] += 1
                    continue
                word[depth] = e
                if depth == n - 1:
                    if edge_dst[e] == v0 and _canon_numba(word, n):
                        if not count_only:
                            for i in range(n):
                                out_words[count, i] = word[i]
                        count += 1
                    choice[depth] += 1
                else:
                    depth += 1
                    choice[depth] = out_start[edge_dst[e]]
        return count


# ---------------------------------------------------------------------------
# Gauss linking number: exact segment-pair solid angles, no quadrature error
# ---------------------------------------------------------------------------

def _gauss_rows_numpy(p1, p2):
    """Per-segment-of-curve-1 partial sums of signed solid angles."""
    m1 = p1.shape[0]
    m2 = p2.shape[0]
    a1 = p1
    a2 = np.roll(p1, -1, axis=0)
    b1 = p2
    b2 = np.roll(p2, -1, axis=0)
    rows = np.zeros(m1)
    for i in range(m1):
        r11 = a1[i] - b1
        r12 = a1[i] - b2
        r21 = a2[i] - b1
        r22 = a2[i] - b2
        for r in (r11, r12, r21, r22):
            r /= np.linalg.norm(r, axis=1)[:, None]
        om = _tri_solid_numpy(r11, r21, r22) + _tri_solid_numpy(r11, r22, r12)
        rows[i] = np.sum(om)
    return rows


def _tri_solid_numpy(a, b, c):
    # Van Oosterom-Strackee signed solid angle of spherical triangle (a,b,c)
    num = np.einsum("ij,ij->i", a, np.cross(b, c))
    den = 1.0 + np.einsum("ij,ij->i", a, b) + np.einsum("ij,ij->i", b, c) \
        + np.einsum("ij,ij->i", c, a)
    return 2.0 * np.arctan2(num, den)


if USE_NUMBA:

    @njit(cache=True, parallel=True)
    def _gauss_rows_numba(p1, p2):
        m1 = p1.shape[0]
        m2 = p2.shape[0]
        rows = np.zeros(m1)
        for i in prange(m1):
            i2 = (i + 1) % m1
            a1x, a1y, a1z = p1[i, 0], p1[i, 1], p1[i, 2]
            a2x, a2y, a2z = p1[i2, 0], p1[i2, 1], p1[i2, 2]
            acc = 0.0
            for j in range(m2):
                j2 = (j + 1) % m2
                b1x, b1y, b1z = p2[j, 0], p2[j, 1], p2[j, 2]
                b2x, b2y, b2z = p2[j2, 0], p2[j2, 1], p2[j2, 2]

                ux, uy, uz = a1x - b1x, a1y - b1y, a1z - b1z
                s = 1.0 / np.sqrt(ux * ux + uy * uy + uz * uz)
                ux, uy, uz = ux * s, uy * s, uz * s

                vx, vy, vz = a2x - b1x, a2y - b1y, a2z - b1z
                s = 1.0 / np.sqrt(vx * vx + vy * vy + vz * vz)
                vx, vy, vz = vx * s, vy * s, vz * s

                wx, wy, wz = a2x - b2x, a2y - b2y, a2z - b2z
                s = 1.0 / np.sqrt(wx * wx + wy * wy + wz * wz)
                wx, wy, wz = wx * s, wy * s, wz * s

                tx, ty, tz = a1x - b2x, a1y - b2y, a1z - b2z
                s = 1.0 / np.sqrt(tx * tx + ty * ty + tz * tz)
                tx, ty, tz = tx * s, ty * s, tz * s

                # triangle (u, v, w)
                cx = vy * wz - vz * wy
                cy = vz * wx - vx * wz
                cz = vx * wy - vy * wx
                num = ux * cx + uy * cy + uz * cz
                den = 1.0 + (ux * vx + uy * vy + uz * vz) \
                    + (vx * wx + vy * wy + vz * wz) \
                    + (wx * ux + wy * uy + wz * uz)
                acc += 2.0 * np.arctan2(num, den)

                # triangle (u, w, t)
                cx = wy * tz - wz * ty
                cy = wz * tx - wx * tz
                cz = wx * ty - wy * tx
                num = ux * cx + uy * cy + uz * cz
                den = 1.0 + (ux * wx + uy * wy + uz * wz) \
                    + (wx * tx + wy * ty + wz * tz) \
                    + (tx * ux + ty * uy + tz * uz)
                acc += 2.0 * np.arctan2(num, den)
            rows[i] = acc
        return rows


def gauss_linking_value(p1: np.ndarray, p2: np.ndarray) -> float:
    """Gauss linking integral of two disjoint closed polylines.

    Exact per segment pair (signed solid-angle closed form); the only error
    is floating-point rounding, so the result sits within ~1e-9 of an
    integer for well-separated curves.
    """
    rows = _gauss_rows(np.ascontiguousarray(p1, dtype=np.float64),
                       np.ascontiguousarray(p2, dtype=np.float64))
    return -float(np.sum(rows)) / FOUR_PI


# ---------------------------------------------------------------------------
# minimum distance between segment sets (Lumelsky clamped closest points)
# ---------------------------------------------------------------------------

_SEG_EPS = 1e-14


def _seg_dist_rows_numpy(p1, p2, same_curve):
    m1 = p1.shape[0]
    m2 = p2.shape[0]
    a1 = p1
    a2 = np.roll(p1, -1, axis=0)
    b1 = p2
    b2 = np.roll(p2, -1, axis=0)
    u_all = a2 - a1
    v_all = b2 - b1
    rows = np.full(m1, np.inf)
    for i in range(m1):
        u = u_all[i]
        w0 = a1[i] - b1
        a = float(u @ u)
        b = v_all @ u
        c = np.einsum("ij,ij->i", v_all, v_all)
        d = w0 @ u
        e = np.einsum("ij,ij->i", v_all, w0)
        den = a * c - b * b
        s = np.where(den > _SEG_EPS, (b * e - c * d) / np.where(den > _SEG_EPS, den, 1.0), 0.0)
        s = np.clip(s, 0.0, 1.0)
        t = np.where(c > _SEG_EPS, (b * s + e) / np.where(c > _SEG_EPS, c, 1.0), 0.0)
        t = np.clip(t, 0.0, 1.0)
        s = np.where(a > _SEG_EPS, np.clip((b * t - d) / np.where(a > _SEG_EPS, a, 1.0), 0.0, 1.0), 0.0)
        diff = w0 + s[:, None] * u[None, :] - t[:, None] * v_all
        dist = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        if same_curve:
            mask = np.ones(m2, dtype=bool)
            for j in (i - 1, i, i + 1):
                mask[j % m2] = False
            dist = np.where(mask, dist, np.inf)
        rows[i] = np.min(dist) if dist.size else np.inf
    return rows


if USE_NUMBA:

    @njit(cache=True, parallel=True)
    def _seg_dist_rows_numba(p1, p2, same_curve):
        m1 = p1.shape[0]
        m2 = p2.shape[0]
        rows = np.full(m1, np.inf)
        for i in prange(m1):
            i2 = (i + 1) % m1
            best = np.inf
            for j in range(m2):
                if same_curve:
                    dj = (i - j) % m1
                    if dj <= 1 or dj >= m1 - 1:
                        continue
                j2 = (j + 1) % m2
                ux = p1[i2, 0] - p1[i, 0]
                uy = p1[i2, 1] - p1[i, 1]
                uz = p1[i2, 2] - p1[i, 2]
                vx = p2[j2, 0] - p2[j, 0]
                vy = p2[j2, 1] - p2[j, 1]
                vz = p2[j2, 2] - p2[j, 2]
                wx = p1[i, 0] - p2[j, 0]
                wy = p1[i, 1] - p2[j, 1]
                wz = p1[i, 2] - p2[j, 2]
                a = ux * ux + uy * uy + uz * uz
                b = ux * vx + uy * vy + uz * vz
                c = vx * vx + vy * vy + vz * vz
                d = ux * wx + uy * wy + uz * wz
                e = vx * wx + vy * wy + vz * wz
                den = a * c - b * b
                if den > _SEG_EPS:
                    s = (b * e - c * d) / den
                else:
                    s = 0.0
                if s < 0.0:
                    s = 0.0
                elif s > 1.0:
                    s = 1.0
                if c > _SEG_EPS:
                    t = (b * s + e) / c
                else:
                    t = 0.0
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
                if a > _SEG_EPS:
                    s = (b * t - d) / a
                    if s < 0.0:
                        s = 0.0
                    elif s > 1.0:
                        s = 1.0
                else:
                    s = 0.0
                dx = wx + s * ux - t * vx
                dy = wy + s * uy - t * vy
                dz = wz + s * uz - t * vz
                dist = np.sqrt(dx * dx + dy * dy + dz * dz)
                if dist < best:
                    best = dist
            rows[i] = best
        return rows


def min_segment_distance(p1: np.ndarray, p2: np.ndarray,
                         same_curve: bool = False) -> float:
    """Minimum distance between two closed polylines (or within one).

    With ``same_curve=True`` adjacent segment pairs are skipped, giving the
    self-clearance used by the self-intersection check.
    """
    rows = _seg_dist_rows(np.ascontiguousarray(p1, dtype=np.float64),
                          np.ascontiguousarray(p2, dtype=np.float64),
                          same_curve)
    return float(np.min(rows))


# ---------------------------------------------------------------------------
# signed crossings of a generic planar projection
# ---------------------------------------------------------------------------

def _crossings_numpy(q1, q2, z1, z2, margin):
    m1 = q1.shape[0]
    m2 = q2.shape[0]
    total = 0
    degenerate = False
    a1 = q1
    a2 = np.roll(q1, -1, axis=0)
    b1 = q2
    b2 = np.roll(q2, -1, axis=0)
    z1b = np.roll(z1, -1)
    z2b = np.roll(z2, -1)
    u = a2 - a1
    v = b2 - b1
    for i in range(m1):
        den = u[i, 0] * v[:, 1] - u[i, 1] * v[:, 0]
        w = b1 - a1[i]
        s_num = w[:, 0] * v[:, 1] - w[:, 1] * v[:, 0]
        t_num = w[:, 0] * u[i, 1] - w[:, 1] * u[i, 0]
        scale = np.abs(den)
        tiny = scale <= _SEG_EPS
        safe = np.where(tiny, 1.0, den)
        s = s_num / safe
        t = t_num / safe
        inside = (~tiny) & (s > 0.0) & (s < 1.0) & (t > 0.0) & (t < 1.0)
        near = (~tiny) & (np.minimum(np.abs(s), np.abs(1.0 - s)) < margin) \
            & (np.minimum(np.abs(t), np.abs(1.0 - t)) < margin)
        if np.any(near & ~inside) or np.any(inside & (
                (np.minimum(s, 1.0 - s) < margin) | (np.minimum(t, 1.0 - t) < margin))):
            degenerate = True
        # parallel segments whose projections might overlap
        if np.any(tiny & (np.abs(s_num) <= margin * (1.0 + np.abs(w).max()))):
            # conservative: parallel and nearly collinear
            degenerate = True
        idx = np.nonzero(inside)[0]
        for j in idx:
            za = z1[i] + s[j] * (z1b[i] - z1[i])
            zb = z2[j] + t[j] * (z2b[j] - z2[j])
            if abs(za - zb) <= margin:
                degenerate = True
                continue
            sgn = 1 if den[j] > 0 else -1
            total += sgn if za > zb else -sgn
    return total, degenerate


if USE_NUMBA:

    @njit(cache=True)
    def _crossings_numba(q1, q2, z1, z2, margin):
        m1 = q1.shape[0]
        m2 = q2.shape[0]
        total = 0
        degenerate = False
        for i in range(m1):
            i2 = (i + 1) % m1
            ux = q1[i2, 0] - q1[i, 0]
            uy = q1[i2, 1] - q1[i, 1]
            for j in range(m2):
                j2 = (j + 1) % m2
                vx = q2[j2, 0] - q2[j, 0]
                vy = q2[j2, 1] - q2[j, 1]
                wx = q2[j, 0] - q1[i, 0]
                wy = q2[j, 1] - q1[i, 1]
                den = ux * vy - uy * vx
                s_num = wx * vy - wy * vx
                t_num = wx * uy - wy * ux
                if np.abs(den) <= _SEG_EPS:
                    if np.abs(s_num) <= margin * (1.0 + np.abs(wx) + np.abs(wy)):
                        degenerate = True
                    continue
                s = s_num / den
                t = t_num / den
                if s <= -margin or s >= 1.0 + margin or t <= -margin or t >= 1.0 + margin:
                    continue
                if s < margin or s > 1.0 - margin or t < margin or t > 1.0 - margin:
                    degenerate = True
                    continue
                za = z1[i] + s * (z1[i2] - z1[i])
                zb = z2[j] + t * (z2[j2] - z2[j])
                if np.abs(za - zb) <= margin:
                    degenerate = True
                    continue
                sgn = 1 if den > 0 else -1
                if za > zb:
                    total += sgn
                else:
                    total -= sgn
        return total, degenerate


def signed_crossing_sum(q1, q2, z1, z2, margin=1e-9):
    """Signed inter-curve crossings of projected polylines.

    ``q*`` are the projected 2D vertices, ``z*`` the depth coordinates along
    the viewing direction.  Returns ``(sum_of_signs, degenerate)``; callers
    retry with a perturbed direction when ``degenerate`` is set.
    """
    if USE_NUMBA:
        total, degen = _crossings_numba(
            np.ascontiguousarray(q1), np.ascontiguousarray(q2),
            np.ascontiguousarray(z1), np.ascontiguousarray(z2), margin)
    else:
        total, degen = _crossings_numpy(q1, q2, z1, z2, margin)
    return int(total), bool(degen)


# ---------------------------------------------------------------------------
# linking-form kernel quadratures
# ---------------------------------------------------------------------------

def _pair_quad_rows_numpy(x1, v1, w1, x2, v2, w2):
    n1 = x1.shape[0]
    rows = np.zeros(n1)
    for i in range(n1):
        d = x1[i] - x2
        r2 = np.einsum("ij,ij->i", d, d)
        r3 = r2 * np.sqrt(r2)
        cr = np.cross(np.broadcast_to(v1[i], v2.shape), v2)
        num = np.einsum("ij,ij->i", cr, d)
        rows[i] = w1[i] * np.sum(w2 * num / r3)
    return rows / FOUR_PI


if USE_NUMBA:

    @njit(cache=True, parallel=True)
    def _pair_quad_rows_numba(x1, v1, w1, x2, v2, w2):
        n1 = x1.shape[0]
        n2 = x2.shape[0]
        rows = np.zeros(n1)
        for i in prange(n1):
            ax, ay, az = x1[i, 0], x1[i, 1], x1[i, 2]
            vx, vy, vz = v1[i, 0], v1[i, 1], v1[i, 2]
            acc = 0.0
            for j in range(n2):
                dx = ax - x2[j, 0]
                dy = ay - x2[j, 1]
                dz = az - x2[j, 2]
                r2 = dx * dx + dy * dy + dz * dz
                r3 = r2 * np.sqrt(r2)
                cx = vy * v2[j, 2] - vz * v2[j, 1]
                cy = vz * v2[j, 0] - vx * v2[j, 2]
                cz = vx * v2[j, 1] - vy * v2[j, 0]
                acc += w2[j] * (cx * dx + cy * dy + cz * dz) / r3
            rows[i] = w1[i] * acc
        return rows / FOUR_PI


def pair_quadrature(x1, v1, w1, x2, v2, w2) -> float:
    """Weighted double sum of the linking-form kernel over two point clouds."""
    args = [np.ascontiguousarray(a, dtype=np.float64)
            for a in (x1, v1, w1, x2, v2, w2)]
    rows = _pair_quad_rows(*args)
    return float(np.sum(rows))


def _volume_pair_rows_numpy(x1, v1, w1, x2, v2, w2, delta, n_bins):
    n1 = x1.shape[0]
    rows = np.zeros(n1)
    excl = np.zeros(n1)
    nexcl = np.zeros(n1, dtype=np.int64)
    masses = np.zeros((n1, n_bins))
    kemp = np.zeros(n1)
    for i in range(n1):
        d = x1[i] - x2
        r2 = np.einsum("ij,ij->i", d, d)
        r = np.sqrt(r2)
        cr = np.cross(np.broadcast_to(v1[i], v2.shape), v2)
        num = np.einsum("ij,ij->i", cr, d)
        far = r >= delta
        safe_r3 = np.where(far, r2 * r, 1.0)
        lam = num / safe_r3 / FOUR_PI
        rows[i] = w1[i] * np.sum(w2[far] * lam[far])
        near = ~far
        excl[i] = w1[i] * np.sum(w2[near])
        nexcl[i] = int(np.count_nonzero(near))
        rnear = r[near]
        wnear = w2[near]
        pos = rnear > 0.0
        if np.any(pos):
            lam_n = np.abs(num[near][pos]) / (rnear[pos] ** 3) / FOUR_PI
            kemp[i] = np.max(rnear[pos] * lam_n)
            k = np.minimum(np.floor(np.log2(delta / rnear[pos])).astype(np.int64),
                           n_bins - 1)
            np.add.at(masses[i], k, w1[i] * wnear[pos])
        # zero-distance pairs carry their mass into the deepest bin
        zero = ~pos
        if np.any(zero):
            masses[i, n_bins - 1] += w1[i] * np.sum(wnear[zero])
    return rows, excl, nexcl, masses, kemp


if USE_NUMBA:

    @njit(cache=True, parallel=True)
    def _volume_pair_rows_numba(x1, v1, w1, x2, v2, w2, delta, n_bins):
        n1 = x1.shape[0]
        n2 = x2.shape[0]
        rows = np.zeros(n1)
        excl = np.zeros(n1)
        nexcl = np.zeros(n1, dtype=np.int64)
        masses = np.zeros((n1, n_bins))
        kemp = np.zeros(n1)
        for i in prange(n1):
            ax, ay, az = x1[i, 0], x1[i, 1], x1[i, 2]
            vx, vy, vz = v1[i, 0], v1[i, 1], v1[i, 2]
            acc = 0.0
            eacc = 0.0
            ecount = 0
            kmax = 0.0
            for j in range(n2):
                dx = ax - x2[j, 0]
                dy = ay - x2[j, 1]
                dz = az - x2[j, 2]
                r2 = dx * dx + dy * dy + dz * dz
                r = np.sqrt(r2)
                if r >= delta:
                    cx = vy * v2[j, 2] - vz * v2[j, 1]
                    cy = vz * v2[j, 0] - vx * v2[j, 2]
                    cz = vx * v2[j, 1] - vy * v2[j, 0]
                    acc += w2[j] * (cx * dx + cy * dy + cz * dz) / (r2 * r)
                else:
                    eacc += w2[j]
                    ecount += 1
                    if r > 0.0:
                        cx = vy * v2[j, 2] - vz * v2[j, 1]
                        cy = vz * v2[j, 0] - vx * v2[j, 2]
                        cz = vx * v2[j, 1] - vy * v2[j, 0]
                        lam = np.abs(cx * dx + cy * dy + cz * dz) / (r2 * r) / FOUR_PI
                        if r * lam > kmax:
                            kmax = r * lam
                        k = int(np.floor(np.log2(delta / r)))
                        if k > n_bins - 1:
                            k = n_bins - 1
                        masses[i, k] += w1[i] * w2[j]
                    else:
                        masses[i, n_bins - 1] += w1[i] * w2[j]
            rows[i] = w1[i] * acc / FOUR_PI
            excl[i] = w1[i] * eacc
            nexcl[i] = ecount
            kemp[i] = kmax
        return rows, excl, nexcl, masses, kemp


def volume_pair_quadrature(x1, v1, w1, x2, v2, w2, delta, n_bins=16):
    """Pairwise kernel sum outside the cutoff plus near-diagonal bookkeeping.

    Returns ``(value, excluded_mass, excluded_pairs, annulus_masses, k_emp)``
    where ``annulus_masses[k]`` is the pair mass with separation in
    ``(delta/2**(k+1), delta/2**k]`` and ``k_emp`` the largest observed
    ``r * |kernel|`` among excluded pairs.
    """
    args = [np.ascontiguousarray(a, dtype=np.float64)
            for a in (x1, v1, w1, x2, v2, w2)]
    if USE_NUMBA:
        rows, excl, nexcl, masses, kemp = _volume_pair_rows_numba(
            *args, float(delta), int(n_bins))
    else:
        rows, excl, nexcl, masses, kemp = _volume_pair_rows_numpy(
            *args, float(delta), int(n_bins))
    return (float(np.sum(rows)), float(np.sum(excl)), int(np.sum(nexcl)),
            masses.sum(axis=0), float(np.max(kemp)) if kemp.size else 0.0)


# ---------------------------------------------------------------------------
# dispatch tables
# ---------------------------------------------------------------------------

if USE_NUMBA:
    _enum_words = _enum_numba
    _gauss_rows = _gauss_rows_numba
    _seg_dist_rows = _seg_dist_rows_numba
    _pair_quad_rows = _pair_quad_rows_numba
else:
    _enum_words = _enum_python
    _gauss_rows = _gauss_rows_numpy
    _seg_dist_rows = _seg_dist_rows_numpy
    _pair_quad_rows = _pair_quad_rows_numpy


def enumerate_words_fixed_length(n, edge_src, edge_dst, out_start, out_list):
    """All canonical prime closed edge words of length ``n``.

    Canonical means lexicographically minimal among rotations; prime means
    not a power of a shorter word.  Returns an ``(count, n)`` int64 array in
    lexicographic order.
    """
    dummy = np.empty((0, n), dtype=np.int64)
    count = _enum_words(n, edge_src, edge_dst, out_start, out_list, dummy, True)
    words = np.empty((count, n), dtype=np.int64)
    if count:
        _enum_words(n, edge_src, edge_dst, out_start, out_list, words, False)
    return words
