"""Hot inner loops: GL2 coset scans and exhaustive curve point counts.

Every kernel exists twice: a loop version compiled with numba and a
vectorised numpy version. The public wrappers dispatch on
:data:`nscartan._accel.HAVE_NUMBA`; :data:`IMPLEMENTATIONS` exposes both for
tests and benchmarks.

Matrices are int64 rows ``(a, b, c, d)`` for ``[[a, b], [c, d]]`` mod ``p``.
Field elements follow the encoding of :mod:`nscartan.finite_algebra`.
"""
import numpy as np

from ._accel import HAVE_NUMBA, njit

SCAN_ROW = 0  # a is the most significant digit: nested loops a, b, c, d
SCAN_COL = 1  # d is the most significant digit: increasing a + p b + p^2 c + p^3 d


# ---------------------------------------------------------------------------
# GL2 coset machinery


@njit
def _key(a, b, c, d, p, mode):
    if mode == 0:
        return ((a * p + b) * p + c) * p + d
    return ((d * p + c) * p + b) * p + a


@njit
def _greedy_cosets_jit(p, H, mode):
    n4 = p * p * p * p
    covered = np.zeros(n4, dtype=np.bool_)
    m = H.shape[0]
    gl2 = (p * p - 1) * (p * p - p)
    reps = np.empty((gl2 // m, 4), dtype=np.int64)
    nrep = 0
    for k in range(n4):
        if covered[k]:
            continue
        if mode == 0:
            a = k // (p * p * p)
            b = (k // (p * p)) % p
            c = (k // p) % p
            d = k % p
        else:
            a = k % p
            b = (k // p) % p
            c = (k // (p * p)) % p
            d = k // (p * p * p)
        if (a * d - b * c) % p == 0:
            continue
        reps[nrep, 0] = a
        reps[nrep, 1] = b
        reps[nrep, 2] = c
        reps[nrep, 3] = d
        nrep += 1
        for i in range(m):
            ha, hb, hc, hd = H[i, 0], H[i, 1], H[i, 2], H[i, 3]
            na = (ha * a + hb * c) % p
            nb = (ha * b + hb * d) % p
            nc = (hc * a + hd * c) % p
            nd = (hc * b + hd * d) % p
            covered[_key(na, nb, nc, nd, p, mode)] = True
    return reps[:nrep]


def _decode_keys(keys, p, mode):
    if mode == SCAN_ROW:
        return keys // p**3, (keys // p**2) % p, (keys // p) % p, keys % p
    return keys % p, (keys // p) % p, (keys // p**2) % p, keys // p**3


def _greedy_cosets_np(p, H, mode):
    n4 = p**4
    covered = np.zeros(n4, dtype=np.bool_)
    m = H.shape[0]
    nreps = (p * p - 1) * (p * p - p) // m
    reps = np.empty((nreps, 4), dtype=np.int64)
    ha, hb, hc, hd = (H[:, i].astype(np.int64) for i in range(4))
    chunk = 1 << 16
    start, nrep = 0, 0
    pending = np.empty(0, dtype=np.int64)
    while nrep < nreps:
        # candidates are re-filtered against coverage, which grows as we go
        pending = pending[~covered[pending]]
        if pending.size == 0:
            keys = np.arange(start, min(start + chunk, n4), dtype=np.int64)
            start += chunk
            a, b, c, d = _decode_keys(keys, p, mode)
            pending = keys[((a * d - b * c) % p != 0) & ~covered[keys]]
            continue
        k = int(pending[0])
        a, b, c, d = (int(v) for v in _decode_keys(np.int64(k), p, mode))
        reps[nrep] = (a, b, c, d)
        nrep += 1
        na = (ha * a + hb * c) % p
        nb = (ha * b + hb * d) % p
        nc = (hc * a + hd * c) % p
        nd = (hc * b + hd * d) % p
        if mode == SCAN_ROW:
            covered[((na * p + nb) * p + nc) * p + nd] = True
        else:
            covered[((nd * p + nc) * p + nb) * p + na] = True
    return reps


@njit
def _inv_mod(a, p):
    # p prime, a != 0 mod p
    result = 1
    base = a % p
    e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


@njit
def _count_fixed_jit(reps, x, p, alpha, plus):
    xa, xb, xc, xd = x[0], x[1], x[2], x[3]
    count = 0
    for i in range(reps.shape[0]):
        a, b, c, d = reps[i, 0], reps[i, 1], reps[i, 2], reps[i, 3]
        di = _inv_mod((a * d - b * c) % p, p)
        # g x
        ta = (a * xa + b * xc) % p
        tb = (a * xb + b * xd) % p
        tc = (c * xa + d * xc) % p
        td = (c * xb + d * xd) % p
        # (g x) g^-1 with g^-1 = di * [[d, -b], [-c, a]]
        ya = (ta * d - tb * c) * di % p
        yb = (-ta * b + tb * a) * di % p
        yc = (tc * d - td * c) * di % p
        yd = (-tc * b + td * a) * di % p
        if ya == yd and yb == alpha * yc % p:
            count += 1
        elif plus and (ya + yd) % p == 0 and (yb + alpha * yc) % p == 0:
            count += 1
    return count


def _count_fixed_np(reps, x, p, alpha, plus):
    a, b, c, d = (reps[:, i].astype(np.int64) for i in range(4))
    xa, xb, xc, xd = (int(v) for v in x)
    det = (a * d - b * c) % p
    di = np.ones_like(det)
    base = det.copy()
    e = p - 2
    while e:
        if e & 1:
            di = di * base % p
        base = base * base % p
        e >>= 1
    ta = (a * xa + b * xc) % p
    tb = (a * xb + b * xd) % p
    tc = (c * xa + d * xc) % p
    td = (c * xb + d * xd) % p
    ya = (ta * d - tb * c) * di % p
    yb = (-ta * b + tb * a) * di % p
    yc = (tc * d - td * c) * di % p
    yd = (-tc * b + td * a) * di % p
    hit = (ya == yd) & (yb == alpha * yc % p)
    if plus:
        hit |= ((ya + yd) % p == 0) & ((yb + alpha * yc) % p == 0)
    return int(hit.sum())


# ---------------------------------------------------------------------------
# finite-field point counting


@njit
def _fadd(a, b, char, r):
    if r == 1:
        return (a + b) % char
    if char == 2:
        return a ^ b
    out = 0
    place = 1
    for _ in range(r):
        out += ((a % char + b % char) % char) * place
        a //= char
        b //= char
        place *= char
    return out


@njit
def _fmul(a, b, exp, log):
    if a == 0 or b == 0:
        return 0
    return exp[log[a] + log[b]]


@njit
def _rhs_lhs_coeffs(x, coeffs, char, r, exp, log):
    # h(x) = a1 x + a3, f(x) = x^3 + a2 x^2 + a4 x + a6
    a1, a2, a3, a4, a6 = coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]
    h = _fadd(_fmul(a1, x, exp, log), a3, char, r)
    x2 = _fmul(x, x, exp, log)
    x3 = _fmul(x2, x, exp, log)
    f = _fadd(_fadd(x3, _fmul(a2, x2, exp, log), char, r),
              _fadd(_fmul(a4, x, exp, log), a6, char, r), char, r)
    return h, f


@njit
def _count_xscan_jit(coeffs, char, r, exp, log, trace_table, neg_table):
    q = log.shape[0]
    qm1 = q - 1
    total = 1  # point at infinity
    for x in range(q):
        h, f = _rhs_lhs_coeffs(x, coeffs, char, r, exp, log)
        if char == 2:
            if h == 0:
                total += 1
            else:
                # y = h z turns the equation into z^2 + z = f / h^2
                if f == 0:
                    total += 2
                else:
                    t = exp[(log[f] - 2 * log[h]) % qm1]
                    if trace_table[t] == 0:
                        total += 2
        else:
            h2 = _fmul(h, h, exp, log)
            four_f = _fmul(4 % char, f, exp, log)
            disc = _fadd(h2, four_f, char, r)
            if disc == 0:
                total += 1
            elif log[disc] % 2 == 0:
                total += 2
    return total


def _count_xscan_np(coeffs, char, r, exp, log, trace_table, neg_table):
    from .finite_algebra import build_ext_field

    F = build_ext_field(char, r)
    a1, a2, a3, a4, a6 = (int(c) for c in coeffs)
    xs = np.arange(F.order, dtype=np.int64)
    h = F.vadd(F.vmul(a1, xs), a3)
    x2 = F.vmul(xs, xs)
    f = F.vadd(F.vadd(F.vmul(x2, xs), F.vmul(a2, x2)), F.vadd(F.vmul(a4, xs), a6))
    if char == 2:
        hz = h == 0
        safe_h = np.where(hz, 1, h)
        t = F.vmul(f, F.vpow(safe_h, F.order - 3))  # h^(q-3) = h^-2
        per_x = np.where(hz, 1, np.where(trace_table[t] == 0, 2, 0))
    else:
        disc = F.vadd(F.vmul(h, h), F.vmul(4 % char, f))
        ld = log[disc]
        per_x = np.where(disc == 0, 1, np.where(ld % 2 == 0, 2, 0))
    return 1 + int(per_x.sum())


@njit
def _count_bruteforce_jit(coeffs, char, r, exp, log, trace_table, neg_table):
    q = log.shape[0]
    total = 1
    for x in range(q):
        h, f = _rhs_lhs_coeffs(x, coeffs, char, r, exp, log)
        for y in range(q):
            lhs = _fadd(_fmul(y, y, exp, log), _fmul(h, y, exp, log), char, r)
            if lhs == f:
                total += 1
    return total


def _count_bruteforce_np(coeffs, char, r, exp, log, trace_table, neg_table):
    from .finite_algebra import build_ext_field

    F = build_ext_field(char, r)
    a1, a2, a3, a4, a6 = (int(c) for c in coeffs)
    ys = np.arange(F.order, dtype=np.int64)
    y2 = F.vmul(ys, ys)
    total = 1
    for x in range(F.order):
        h = F.add(F.mul(a1, x), a3)
        x2 = F.mul(x, x)
        f = F.add(F.add(F.mul(x2, x), F.mul(a2, x2)), F.add(F.mul(a4, x), a6))
        lhs = F.vadd(y2, F.vmul(h, ys))
        total += int((lhs == f).sum())
    return total


# ---------------------------------------------------------------------------
# dispatch

IMPLEMENTATIONS = {
    "numba": {
        "greedy_cosets": _greedy_cosets_jit,
        "count_fixed": _count_fixed_jit,
        "count_xscan": _count_xscan_jit,
        "count_bruteforce": _count_bruteforce_jit,
    },
    "numpy": {
        "greedy_cosets": _greedy_cosets_np,
        "count_fixed": _count_fixed_np,
        "count_xscan": _count_xscan_np,
        "count_bruteforce": _count_bruteforce_np,
    },
}

_ACTIVE = IMPLEMENTATIONS["numba" if HAVE_NUMBA else "numpy"]


def greedy_coset_reps(p, H, mode=SCAN_ROW):
    """First element, in scan order, of every right coset ``H g`` of GL2(F_p)."""
    return _ACTIVE["greedy_cosets"](int(p), np.ascontiguousarray(H, dtype=np.int64), int(mode))


def count_fixed(reps, x, p, alpha, plus):
    """Number of representatives ``g`` with ``g x g^-1`` in C (or C+ if ``plus``)."""
    return int(_ACTIVE["count_fixed"](reps, np.asarray(x, dtype=np.int64), int(p), int(alpha), bool(plus)))


def _field_args(F):
    return F.char, F.degree, F.exp, F.log, F.trace_table, F.neg_table


def count_points_xscan(F, coeffs):
    """``#E(F)`` for ``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6``, scanning x."""
    return int(_ACTIVE["count_xscan"](np.asarray(coeffs, dtype=np.int64), *_field_args(F)))


def count_points_bruteforce(F, coeffs):
    """``#E(F)`` by testing every pair ``(x, y)``."""
    return int(_ACTIVE["count_bruteforce"](np.asarray(coeffs, dtype=np.int64), *_field_args(F)))
