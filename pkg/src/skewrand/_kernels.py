"""Hot inner loops, each in two flavours.

``*_jit`` functions are plain loops compiled by numba; ``*_np`` functions are
vectorised numpy. Both take the same arguments and return identical results.
The public names at the bottom dispatch according to ``_backend.USE_NUMBA``.

No kernel draws random numbers: callers pass in already-shuffled arrays so
that both backends consume the RNG stream identically.
"""
import numpy as np

from ._backend import USE_NUMBA, njit

# ---------------------------------------------------------------------------
# closed-walk classification for the exact trace-moment oracle
# ---------------------------------------------------------------------------
#
# For a closed walk i_1 -> ... -> i_k -> i_1 on the complete graph, let e be the
# number of distinct undirected edges and B the number of steps taken from the
# larger to the smaller endpoint. A walk survives (has nonzero expectation)
# iff it has no stationary step and every edge is traversed an even number of
# times. counts[e, B % 2] tallies the survivors.


@njit(cache=True)
def walk_class_counts_jit(n, k):
    half = k // 2
    counts = np.zeros((half + 1, 2), np.int64)
    walk = np.zeros(k, np.int64)
    codes = np.zeros(k, np.int64)
    total = n**k
    for idx in range(total):
        r = idx
        for t in range(k):
            walk[t] = r % n
            r //= n
        ok = True
        back = 0
        for t in range(k):
            u = walk[t]
            v = walk[(t + 1) % k]
            if u == v:
                ok = False
                break
            if u < v:
                codes[t] = u * n + v
            else:
                codes[t] = v * n + u
                back += 1
        if not ok:
            continue
        distinct = 0
        for t in range(k):
            first = True
            for s in range(t):
                if codes[s] == codes[t]:
                    first = False
                    break
            if not first:
                continue
            c = 0
            for s in range(t, k):
                if codes[s] == codes[t]:
                    c += 1
            if c % 2 == 1:
                ok = False
                break
            distinct += 1
        if ok:
            counts[distinct, back & 1] += 1
    return counts


def walk_class_counts_np(n, k):
    half = k // 2
    counts = np.zeros((half + 1, 2), np.int64)
    if n == 1:
        return counts
    # chunk over the leading two walk indices to bound memory at n^(k-2) rows
    lead = min(k, 2)
    rest = k - lead
    tail = np.arange(n**rest, dtype=np.int64)
    tail_cols = np.empty((tail.size, rest), np.int64)
    r = tail.copy()
    for t in range(rest):
        tail_cols[:, t] = r % n
        r //= n
    lower = np.tril(np.ones((k, k), bool), -1)
    for head in range(n**lead):
        walk = np.empty((tail.size, k), np.int64)
        h = head
        for t in range(lead):
            walk[:, t] = h % n
            h //= n
        walk[:, lead:] = tail_cols
        nxt = np.roll(walk, -1, axis=1)
        keep = (walk != nxt).all(axis=1)
        walk, nxt = walk[keep], nxt[keep]
        if walk.size == 0:
            continue
        lo = np.minimum(walk, nxt)
        hi = np.maximum(walk, nxt)
        codes = lo * n + hi
        back = (walk > nxt).sum(axis=1)
        eq = codes[:, :, None] == codes[:, None, :]
        mult = eq.sum(axis=2)
        even = (mult % 2 == 0).all(axis=1)
        first = ~(eq & lower).any(axis=2)
        distinct = first.sum(axis=1)
        distinct, parity = distinct[even], back[even] & 1
        np.add.at(counts, (distinct, parity), 1)
    return counts


# ---------------------------------------------------------------------------
# configuration-model stub pairing
# ---------------------------------------------------------------------------


@njit(cache=True)
def pairing_is_simple_jit(stubs, n):
    m = stubs.shape[0] // 2
    codes = np.empty(m, np.int64)
    for i in range(m):
        a = stubs[2 * i]
        b = stubs[2 * i + 1]
        if a == b:
            return False
        if a < b:
            codes[i] = a * n + b
        else:
            codes[i] = b * n + a
    codes.sort()
    for i in range(1, m):
        if codes[i] == codes[i - 1]:
            return False
    return True


def pairing_is_simple_np(stubs, n):
    a = stubs[0::2]
    b = stubs[1::2]
    if np.any(a == b):
        return False
    codes = np.sort(np.minimum(a, b) * n + np.maximum(a, b))
    return not np.any(codes[1:] == codes[:-1])


@njit(cache=True)
def sw_round_jit(stubs, adj):
    """Accept shuffled stub pairs in order; return the rejected stubs.

    ``adj`` (dense bool, symmetric) is updated in place.
    """
    m = stubs.shape[0] // 2
    left = np.empty(stubs.shape[0], np.int64)
    nl = 0
    for i in range(m):
        a = stubs[2 * i]
        b = stubs[2 * i + 1]
        if a != b and not adj[a, b]:
            adj[a, b] = True
            adj[b, a] = True
        else:
            left[nl] = a
            left[nl + 1] = b
            nl += 2
    return left[:nl]


def sw_round_np(stubs, adj):
    a = stubs[0::2]
    b = stubs[1::2]
    n = adj.shape[0]
    cand = (a != b) & ~adj[a, b]
    codes = np.minimum(a, b) * n + np.maximum(a, b)
    # within the round only the first occurrence of a new edge is accepted
    idx = np.flatnonzero(cand)
    _, first = np.unique(codes[idx], return_index=True)
    accept = np.zeros(a.size, bool)
    accept[idx[first]] = True
    adj[a[accept], b[accept]] = True
    adj[b[accept], a[accept]] = True
    rej = ~accept
    left = np.empty(2 * int(rej.sum()), np.int64)
    left[0::2] = a[rej]
    left[1::2] = b[rej]
    return left


# ---------------------------------------------------------------------------
# Kolmogorov-Smirnov statistic
# ---------------------------------------------------------------------------


@njit(cache=True)
def ks_statistic_jit(cdf_values):
    n = cdf_values.shape[0]
    best = 0.0
    for i in range(n):
        f = cdf_values[i]
        hi = abs((i + 1) / n - f)
        lo = abs(i / n - f)
        if hi > best:
            best = hi
        if lo > best:
            best = lo
    return best


def ks_statistic_np(cdf_values):
    n = cdf_values.shape[0]
    i = np.arange(1, n + 1)
    return float(max(np.abs(i / n - cdf_values).max(), np.abs((i - 1) / n - cdf_values).max()))


if USE_NUMBA:
    walk_class_counts = walk_class_counts_jit
    pairing_is_simple = pairing_is_simple_jit
    sw_round = sw_round_jit
    ks_statistic = ks_statistic_jit
else:
    walk_class_counts = walk_class_counts_np
    pairing_is_simple = pairing_is_simple_np
    sw_round = sw_round_np
    ks_statistic = ks_statistic_np
