"""Numba kernels for the depth-first row search.

Rows are int64 masks, position 0 in the most significant of n bits, bit
set for +1.  Position 0 is always -1 in the tree; every leaf stands for
itself and its negation.
"""

import numba
import numpy as np

STATUS_OK = 0
STATUS_NODE_CAP = 1


@numba.njit(cache=True)
def undecided_table(n, shifts):
    """u[t, i]: product terms of paf(shifts[i]) still open once positions 0..t-1 are set."""
    k = shifts.shape[0]
    u = np.empty((n + 1, k), dtype=np.int64)
    for t in range(n + 1):
        for i in range(k):
            s = shifts[i]
            done = max(0, t - s) + max(0, t - (n - s))
            u[t, i] = n - done
    return u


@numba.njit(cache=True)
def _rotr(r, k, n):
    if k == 0:
        return r
    low = r & ((np.int64(1) << k) - 1)
    return (r >> k) | (low << (n - k))


@numba.njit(cache=True)
def _bitrev(r, n):
    out = np.int64(0)
    for j in range(n):
        out = (out << 1) | ((r >> j) & 1)
    return out


@numba.njit(cache=True)
def _images(r, n, rot, neg, rev, buf):
    full = (np.int64(1) << n) - 1
    nb = 1
    buf[0] = r
    if rev:
        buf[nb] = _bitrev(r, n)
        nb += 1
    if neg:
        for b in range(nb):
            buf[nb + b] = buf[b] ^ full
        nb *= 2
    count = 0
    nrot = n if rot else 1
    out = np.empty(nb * nrot, dtype=np.int64)
    for b in range(nb):
        base = buf[b]
        for k in range(nrot):
            out[count] = _rotr(base, k, n)
            count += 1
    return out


@numba.njit(cache=True)
def _is_canonical(r, n, rot, neg, rev):
    full = (np.int64(1) << n) - 1
    nrot = n if rot else 1
    for k in range(nrot):
        if _rotr(r, k, n) < r:
            return False
    if neg:
        c = r ^ full
        for k in range(nrot):
            if _rotr(c, k, n) < r:
                return False
    if rev:
        b = _bitrev(r, n)
        for k in range(nrot):
            if _rotr(b, k, n) < r:
                return False
        if neg:
            c = b ^ full
            for k in range(nrot):
                if _rotr(c, k, n) < r:
                    return False
    return True


@numba.njit(cache=True)
def orbit_size(r, n, rot, neg, rev):
    buf = np.empty(4, dtype=np.int64)
    imgs = np.sort(_images(r, n, rot, neg, rev, buf))
    size = 1
    for i in range(1, imgs.shape[0]):
        if imgs[i] != imgs[i - 1]:
            size += 1
    return size


@numba.njit(cache=True)
def _grow(a, need):
    if need <= a.shape[0]:
        return a
    b = np.empty(max(need, 2 * a.shape[0]), dtype=a.dtype)
    b[: a.shape[0]] = a
    return b


@numba.njit(cache=True)
def run_subtrees(n, shifts, prefixes, depth, stop_depth, use_sum, h, rot, neg, rev, max_nodes):
    """Depth-first search below each prefix.

    prefixes: (P, depth) array of +/-1, each already feasible; depth 0
    starts from the root, where position 0 is pinned to -1.  When
    stop_depth < n, surviving partial rows of length stop_depth are
    returned as new prefixes instead of being searched to the leaves.

    Returns (status, nodes, leaves, witnesses, n_witnesses, frontier, n_frontier).
    """
    k = shifts.shape[0]
    u = undecided_table(n, shifts)
    x = np.zeros(n, dtype=np.int64)
    p = np.zeros(k, dtype=np.int64)
    wit = np.empty(64, dtype=np.int64)
    nwit = 0
    front = np.empty((16, stop_depth), dtype=np.int64)
    nfront = 0
    nodes = np.int64(0)
    leaves = np.int64(0)
    full = (np.int64(1) << n) - 1

    for q in range(prefixes.shape[0]):
        for i in range(k):
            p[i] = 0
        total = 0
        for t in range(depth):
            x[t] = prefixes[q, t]
            total += x[t]
            for i in range(k):
                s = shifts[i]
                if t >= s:
                    p[i] += x[t] * x[t - s]
                if t + s >= n:
                    p[i] += x[t] * x[t + s - n]
        t = depth
        x[t] = -1
        while True:
            # apply x[t]
            v = x[t]
            total += v
            for i in range(k):
                s = shifts[i]
                if t >= s:
                    p[i] += v * x[t - s]
                if t + s >= n:
                    p[i] += v * x[t + s - n]
            nodes += 1
            if nodes > max_nodes:
                return STATUS_NODE_CAP, nodes, leaves, wit, nwit, front, nfront
            ok = True
            for i in range(k):
                a = p[i]
                rem = u[t + 1, i]
                if a > rem or -a > rem or ((a + rem) & 1) != 0:
                    ok = False
                    break
            if ok and use_sum:
                rem = n - t - 1
                if abs(h - total) > rem and abs(-h - total) > rem:
                    ok = False
            if ok and t + 1 == stop_depth and stop_depth < n:
                if nfront == front.shape[0]:
                    nf = np.empty((2 * nfront, stop_depth), dtype=np.int64)
                    nf[:nfront] = front
                    front = nf
                for j in range(stop_depth):
                    front[nfront, j] = x[j]
                nfront += 1
                ok = False
            elif ok and t + 1 == n:
                leaves += 1
                r = np.int64(0)
                for j in range(n):
                    r = (r << 1) | (1 if x[j] > 0 else 0)
                if _is_canonical(r, n, rot, neg, rev):
                    wit = _grow(wit, nwit + 1)
                    wit[nwit] = r
                    nwit += 1
                c = r ^ full
                if _is_canonical(c, n, rot, neg, rev):
                    wit = _grow(wit, nwit + 1)
                    wit[nwit] = c
                    nwit += 1
                ok = False
            if ok:
                t += 1
                x[t] = -1
                continue
            # backtrack
            done = False
            while True:
                v = x[t]
                total -= v
                for i in range(k):
                    s = shifts[i]
                    if t >= s:
                        p[i] -= v * x[t - s]
                    if t + s >= n:
                        p[i] -= v * x[t + s - n]
                if v == -1 and t > 0:
                    x[t] = 1
                    break
                t -= 1
                if t < depth:
                    done = True
                    break
            if done:
                break
    return STATUS_OK, nodes, leaves, wit, nwit, front, nfront


@numba.njit(cache=True)
def witness_stats(masks, n, rot, neg, rev):
    """Per witness: orbit size, number of 1-alternating sequences, orthogonal prefix."""
    m = masks.shape[0]
    orb = np.empty(m, dtype=np.int64)
    a1 = np.empty(m, dtype=np.int64)
    kmax = np.empty(m, dtype=np.int64)
    x = np.empty(n, dtype=np.int64)
    lens = np.empty(n, dtype=np.int64)
    for w in range(m):
        r = masks[w]
        orb[w] = orbit_size(r, n, rot, neg, rev)
        for j in range(n):
            x[j] = 1 if (r >> (n - 1 - j)) & 1 else -1
        # circular block lengths from the first sign change
        start = -1
        for j in range(n):
            if x[j] != x[j - 1]:
                start = j
                break
        if start < 0:
            a1[w] = 0
        else:
            nb = 0
            run = 1
            for t in range(1, n + 1):
                j = (start + t) % n
                if t < n and x[j] == x[(start + t - 1) % n]:
                    run += 1
                else:
                    lens[nb] = run
                    nb += 1
                    run = 1
            cnt = 0
            all_one = True
            for b in range(nb):
                if lens[b] != 1:
                    all_one = False
                if lens[b] == 1 and lens[b - 1] != 1:
                    cnt += 1
            a1[w] = 1 if all_one else cnt
        kk = n
        for s in range(1, n):
            acc = 0
            for j in range(n):
                acc += x[j] * x[(j + s) % n]
            if acc != 0:
                kk = s
                break
        kmax[w] = kk
    return orb, a1, kmax
