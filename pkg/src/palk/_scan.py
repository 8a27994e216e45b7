"""JIT-compiled diagonal-scan kernels.

The main kernel implements the per-center k-differences scan for all three
pruning variants, with extension lookups answered by the suffix-array index
built in lce.py; string_total reuses it for whole-string totals.  Everything
here works on plain int64 arrays so the hot paths stay free of Python object
traffic; the public wrappers live in engine.py.

The enumeration drivers (every string of a tiny length, or Monte Carlo
batches of them) use a separate totals-only twin of the scan that answers
extensions by direct symbol comparison, skipping index construction.  The
twin exists for speed of the main kernel, not of itself: a comparison loop
on any branch of the main kernel's body stops LLVM from keeping the scan
state in registers and slows the indexed scan about five-fold, so the two
extension modes must not share one compiled function.  test_engine pins the
twin's totals to the main kernel's.
"""
from __future__ import annotations

import numpy as np
from numba import njit

ABSENT = -(1 << 60)

VARIANT_ORIGINAL = 0
VARIANT_IMPROVE1 = 1
VARIANT_IMPROVE2 = 2

OP_NONE = 0
OP_INS = 1
OP_SUB = 2
OP_DEL = 3


@njit(cache=True, nogil=True, inline="always")
def _extend(text, rank, table, log, a, b):
    # Longest common prefix of the suffixes of text at 0-based a, b, by
    # range-minimum over the LCP array.  Straight-line on purpose: see the
    # module docstring.
    if a == b:
        return text.shape[0] - a
    ra = rank[a]
    rb = rank[b]
    if ra > rb:
        t = ra
        ra = rb
        rb = t
    lv = log[rb - ra]
    v1 = table[lv, ra]
    v2 = table[lv, rb - (1 << lv)]
    return v1 if v1 < v2 else v2


@njit(cache=True, nogil=True, inline="always")
def _extend_walk(text, a, b):
    # Same answer by direct comparison; the distinct sentinels terminate
    # the walk before either suffix runs out.
    if a == b:
        return text.shape[0] - a
    length = 0
    while text[a + length] == text[b + length]:
        length += 1
    return length


@njit(cache=True, nogil=True)
def scan_center(text, rank, table, log, n, c, u, k, variant,
                want_hist, want_life, hist_row, hist_op, hist_i0,
                rows, shadow, stamp, life, nxt, prv):
    """Diagonal scan of one center.

    Arm lengths are x = u (left) and y = n - c (right); diagonals are
    d = q - p.  rows holds the farthest row per diagonal, persisted across
    levels so frozen and dropped diagonals stay readable as predecessors.
    Work arrays must hold at least min(k,x) + min(k,y) + 3 slots.
    want_life skips the per-diagonal lifetime bookkeeping (max_life
    returns 1); totals-only callers pass False.

    Returns (best_p, best_q, best_d, e_best, iterations, max_life, corner).
    """
    x = u
    y = n - c
    kx = k if k < x else x
    ky = k if k < y else y
    w = kx + ky + 3
    off = kx + 1  # slot of diagonal 0; slots 0 and w-1 stay absent as padding
    for i in range(w):
        rows[i] = ABSENT
        shadow[i] = ABSENT
        stamp[i] = -1
        life[i] = 0

    base_l = n - u      # 0-based start of the full left view in text
    base_r = n + c + 1  # 0-based start of the full right view in text

    iters = 1
    row0 = _extend(text, rank, table, log, base_l, base_r)
    rows[off] = row0
    stamp[off] = 0
    life[off] = 1
    best_p = row0
    best_q = row0
    best_d = 0
    e_best = 0
    if want_hist:
        hist_row[0, off] = row0
        hist_op[0, off] = OP_NONE
        hist_i0[0, off] = 0
    if row0 == x and row0 == y:
        return best_p, best_q, best_d, e_best, iters, 1, 1

    head = 0
    tail = w - 1
    if variant == VARIANT_IMPROVE1:
        if row0 == x or row0 == y:
            nxt[head] = tail
            prv[tail] = head
        else:
            nxt[head] = off
            prv[off] = head
            nxt[off] = tail
            prv[tail] = off

    lo = 0
    hi = 0
    lo2 = 0
    hi2 = 0
    blocked_l = False
    blocked_r = False
    if variant == VARIANT_IMPROVE2:
        if row0 == x:
            blocked_l = True
            lo = 1
        elif row0 == y:
            blocked_r = True
            hi = -1

    max_life = 1
    for e in range(1, k + 1):
        if variant == VARIANT_IMPROVE1:
            if e <= x:
                s = off - e
                first = nxt[head]
                nxt[head] = s
                prv[s] = head
                nxt[s] = first
                prv[first] = s
            if e <= y:
                s = off + e
                last = prv[tail]
                nxt[last] = s
                prv[s] = last
                nxt[s] = tail
                prv[tail] = s
            cur = nxt[head]
        elif variant == VARIANT_IMPROVE2:
            if not blocked_l:
                lo = -e if e < x else -x
            if not blocked_r:
                hi = e if e < y else y
            lo2 = lo
            hi2 = hi
            cur = lo
        else:
            lo = -e if e < x else -x
            hi = e if e < y else y
            cur = lo

        while True:
            if variant == VARIANT_IMPROVE1:
                if cur == tail:
                    break
                slot = cur
                d = slot - off
                step = nxt[slot]
            else:
                if cur > hi:
                    break
                d = cur
                slot = off + d
                step = cur + 1

            iters += 1
            if want_life:
                life[slot] += 1
                if life[slot] > max_life:
                    max_life = life[slot]

            # Reads must see level e-1 values even after this level updated
            # a neighbor, hence the shadow copies stamped per level.
            rl = shadow[slot - 1] if stamp[slot - 1] == e else rows[slot - 1]
            rm = shadow[slot] if stamp[slot] == e else rows[slot]
            rr = shadow[slot + 1] if stamp[slot + 1] == e else rows[slot + 1]

            # Valid candidates as plain select chains, invalid mapped to -1;
            # ABSENT rows fail the column checks on their own (|d| <= k).
            # Ties keep the insertion > substitution > deletion preference.
            ci = rl if (rl + d >= 0 and rl + d <= y) else -1
            cs = rm + 1 if (rm + 1 <= x and rm + 1 + d >= 0 and rm + 1 + d <= y) else -1
            cd_ = rr + 1 if (rr + 1 <= x and rr + 1 + d >= 0 and rr + 1 + d <= y) else -1
            cand = ci if ci >= cs else cs
            if cd_ > cand:
                cand = cd_

            touch_r = False
            touch_c = False
            got_new = False
            if cand >= 0:
                istar = cand + _extend(text, rank, table, log,
                                       base_l + cand, base_r + cand + d)
                if istar > rm:  # also covers rm == ABSENT
                    shadow[slot] = rows[slot]
                    stamp[slot] = e
                    rows[slot] = istar
                    got_new = True
                    if want_hist:
                        hist_row[e, slot] = istar
                        hist_op[e, slot] = (
                            OP_INS if cand == ci else
                            OP_SUB if cand == cs else OP_DEL
                        )
                        hist_i0[e, slot] = cand
                    if istar + istar + d > best_p + best_q:
                        best_p = istar
                        best_q = istar + d
                        best_d = d
                        e_best = e
                    touch_r = istar == x
                    touch_c = istar + d == y
                    if touch_r and touch_c:
                        return best_p, best_q, best_d, e_best, iters, max_life, 1

            if variant == VARIANT_IMPROVE1:
                # Drop boundary touchers; drop still-absent diagonals after
                # their first visit (their sources are frozen or absent for
                # good, so no later level can seed them).
                if touch_r or touch_c or (not got_new and rm == ABSENT):
                    before = prv[slot]
                    after = nxt[slot]
                    nxt[before] = after
                    prv[after] = before
            elif variant == VARIANT_IMPROVE2:
                # Touches narrow the strip for later levels only; the level
                # under way still visits its full range, like Improve1 does.
                if touch_r:
                    blocked_l = True
                    if d + 1 > lo2:
                        lo2 = d + 1
                if touch_c:
                    blocked_r = True
                    if d - 1 < hi2:
                        hi2 = d - 1

            cur = step

        if variant == VARIANT_IMPROVE2:
            lo = lo2
            hi = hi2

    return best_p, best_q, best_d, e_best, iters, max_life, 0


@njit(cache=True, nogil=True)
def string_total(text, rank, table, log, n, k, variant,
                 include_trivial, rows, shadow, stamp, life, nxt, prv):
    """Summed iteration count over all centers of both parities."""
    dummy = np.empty((1, 1), dtype=np.int64)
    total = 0
    c_hi = n if include_trivial else n - 1
    for c in range(1, c_hi + 1):  # even centers, u = c
        r = scan_center(text, rank, table, log, n, c, c, k, variant,
                        False, False, dummy, dummy, dummy,
                        rows, shadow, stamp, life, nxt, prv)
        total += r[4]
    c_lo = 1 if include_trivial else 2
    for c in range(c_lo, c_hi + 1):  # odd centers, u = c - 1
        r = scan_center(text, rank, table, log, n, c, c - 1, k, variant,
                        False, False, dummy, dummy, dummy,
                        rows, shadow, stamp, life, nxt, prv)
        total += r[4]
    return total


@njit(cache=True, nogil=True)
def walk_center_iters(text, n, c, u, k, variant, rows, shadow, stamp, nxt, prv):
    """Iteration count of one center scan, extensions by direct comparison.

    Totals-only twin of scan_center for tiny unindexed texts: same strip,
    drop, and abort behavior, none of the endpoint or script bookkeeping.
    """
    x = u
    y = n - c
    kx = k if k < x else x
    ky = k if k < y else y
    w = kx + ky + 3
    off = kx + 1
    for i in range(w):
        rows[i] = ABSENT
        shadow[i] = ABSENT
        stamp[i] = -1
    base_l = n - u
    base_r = n + c + 1

    iters = 1
    row0 = _extend_walk(text, base_l, base_r)
    rows[off] = row0
    stamp[off] = 0
    if row0 == x and row0 == y:
        return iters

    head = 0
    tail = w - 1
    if variant == VARIANT_IMPROVE1:
        if row0 == x or row0 == y:
            nxt[head] = tail
            prv[tail] = head
        else:
            nxt[head] = off
            prv[off] = head
            nxt[off] = tail
            prv[tail] = off

    lo = 0
    hi = 0
    lo2 = 0
    hi2 = 0
    blocked_l = False
    blocked_r = False
    if variant == VARIANT_IMPROVE2:
        if row0 == x:
            blocked_l = True
            lo = 1
        elif row0 == y:
            blocked_r = True
            hi = -1

    for e in range(1, k + 1):
        if variant == VARIANT_IMPROVE1:
            if e <= x:
                s = off - e
                first = nxt[head]
                nxt[head] = s
                prv[s] = head
                nxt[s] = first
                prv[first] = s
            if e <= y:
                s = off + e
                last = prv[tail]
                nxt[last] = s
                prv[s] = last
                nxt[s] = tail
                prv[tail] = s
            cur = nxt[head]
        elif variant == VARIANT_IMPROVE2:
            if not blocked_l:
                lo = -e if e < x else -x
            if not blocked_r:
                hi = e if e < y else y
            lo2 = lo
            hi2 = hi
            cur = lo
        else:
            lo = -e if e < x else -x
            hi = e if e < y else y
            cur = lo

        while True:
            if variant == VARIANT_IMPROVE1:
                if cur == tail:
                    break
                slot = cur
                d = slot - off
                step = nxt[slot]
            else:
                if cur > hi:
                    break
                d = cur
                slot = off + d
                step = cur + 1

            iters += 1

            rl = shadow[slot - 1] if stamp[slot - 1] == e else rows[slot - 1]
            rm = shadow[slot] if stamp[slot] == e else rows[slot]
            rr = shadow[slot + 1] if stamp[slot + 1] == e else rows[slot + 1]

            ci = rl if (rl + d >= 0 and rl + d <= y) else -1
            cs = rm + 1 if (rm + 1 <= x and rm + 1 + d >= 0 and rm + 1 + d <= y) else -1
            cd_ = rr + 1 if (rr + 1 <= x and rr + 1 + d >= 0 and rr + 1 + d <= y) else -1
            cand = ci if ci >= cs else cs
            if cd_ > cand:
                cand = cd_

            touch_r = False
            touch_c = False
            got_new = False
            if cand >= 0:
                istar = cand + _extend_walk(text, base_l + cand, base_r + cand + d)
                if istar > rm:
                    shadow[slot] = rows[slot]
                    stamp[slot] = e
                    rows[slot] = istar
                    got_new = True
                    touch_r = istar == x
                    touch_c = istar + d == y
                    if touch_r and touch_c:
                        return iters

            if variant == VARIANT_IMPROVE1:
                if touch_r or touch_c or (not got_new and rm == ABSENT):
                    before = prv[slot]
                    after = nxt[slot]
                    nxt[before] = after
                    prv[after] = before
            elif variant == VARIANT_IMPROVE2:
                if touch_r:
                    blocked_l = True
                    if d + 1 > lo2:
                        lo2 = d + 1
                if touch_c:
                    blocked_r = True
                    if d - 1 < hi2:
                        hi2 = d - 1

            cur = step

        if variant == VARIANT_IMPROVE2:
            lo = lo2
            hi = hi2

    return iters


@njit(cache=True, nogil=True)
def walk_string_total(text, n, k, variant, include_trivial,
                      rows, shadow, stamp, nxt, prv):
    """string_total twin driving walk_center_iters."""
    total = 0
    c_hi = n if include_trivial else n - 1
    for c in range(1, c_hi + 1):
        total += walk_center_iters(text, n, c, c, k, variant,
                                   rows, shadow, stamp, nxt, prv)
    c_lo = 1 if include_trivial else 2
    for c in range(c_lo, c_hi + 1):
        total += walk_center_iters(text, n, c, c - 1, k, variant,
                                   rows, shadow, stamp, nxt, prv)
    return total


@njit(cache=True, nogil=True)
def _fill_text(text, s, n, sigma):
    # text = S^R . #1 . S . #2 with sentinel codes sigma, sigma + 1
    for i in range(n):
        text[n - 1 - i] = s[i]
        text[n + 1 + i] = s[i]
    text[n] = sigma
    text[2 * n + 1] = sigma + 1


@njit(cache=True, nogil=True)
def enum_total(n, sigma, k, variant):
    """Iteration total summed over every length-n string on sigma symbols."""
    m = 2 * n + 2
    text = np.empty(m, dtype=np.int64)
    s = np.zeros(n, dtype=np.int64)
    w = 2 * k + 3
    rows = np.empty(w, dtype=np.int64)
    shadow = np.empty(w, dtype=np.int64)
    stamp = np.empty(w, dtype=np.int64)
    nxt = np.empty(w, dtype=np.int64)
    prv = np.empty(w, dtype=np.int64)
    total = 0
    while True:
        _fill_text(text, s, n, sigma)
        total += walk_string_total(text, n, k, variant, False,
                                   rows, shadow, stamp, nxt, prv)
        j = n - 1
        while j >= 0 and s[j] == sigma - 1:
            s[j] = 0
            j -= 1
        if j < 0:
            return total
        s[j] += 1


@njit(cache=True, nogil=True)
def batch_totals(samples, sigma, k, variant):
    """Per-string iteration totals for a batch of sampled strings."""
    count, n = samples.shape
    m = 2 * n + 2
    text = np.empty(m, dtype=np.int64)
    w = 2 * k + 3
    rows = np.empty(w, dtype=np.int64)
    shadow = np.empty(w, dtype=np.int64)
    stamp = np.empty(w, dtype=np.int64)
    nxt = np.empty(w, dtype=np.int64)
    prv = np.empty(w, dtype=np.int64)
    out = np.empty(count, dtype=np.int64)
    for i in range(count):
        _fill_text(text, samples[i], n, sigma)
        out[i] = walk_string_total(text, n, k, variant, False,
                                   rows, shadow, stamp, nxt, prv)
    return out


@njit(cache=True, nogil=True)
def dp_fill(xs, ys, cmap):
    """Edit-distance table between xs and ys under a mapped match test."""
    x = xs.shape[0]
    y = ys.shape[0]
    out = np.empty((x + 1, y + 1), dtype=np.int64)
    for j in range(y + 1):
        out[0, j] = j
    for i in range(1, x + 1):
        out[i, 0] = i
        xi = cmap[xs[i - 1]]
        for j in range(1, y + 1):
            best = out[i - 1, j - 1]
            if xi != ys[j - 1]:
                best += 1
            v = out[i - 1, j] + 1
            if v < best:
                best = v
            v = out[i, j - 1] + 1
            if v < best:
                best = v
            out[i, j] = best
    return out
