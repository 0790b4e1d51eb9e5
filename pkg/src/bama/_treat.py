"""Treatment-search kernels.

``search`` arrays hold 0/1 uint8 values. A run anchored at ``b`` with step
``m`` covers ``b, b+m, b+2m, ...`` for as long as the search array reads 1.
"""
import math

import numpy as np

from ._accel import HAVE_NUMBA, jit


@jit
def varint_len(v):
    n = 1
    while v >= 0x80:
        v >>= 7
        n += 1
    return n


@jit
def guard_ok(count, start, step, new_ones, ones, length):
    cost = 8 * (varint_len(count) + varint_len(start) + varint_len(step))
    per_one = math.log2(length / ones)
    if per_one < 1.0:
        per_one = 1.0
    return cost < new_ones * per_one


@jit
def guard_floor(min_run, guard, ones, length):
    """Largest run length that can never be accepted at the current block state."""
    floor = min_run - 1
    if guard:
        per_one = math.log2(length / ones)
        if per_one < 1.0:
            per_one = 1.0
        # three one-byte varints is the cheapest possible triple
        while (floor + 1) * per_one <= 24:
            floor += 1
    return floor


@jit
def best_run(search, b, n, floor=0):
    """Longest run from anchor ``b`` over every later 1; ties go to the smaller step.

    Only runs longer than ``floor`` are considered. Returns ``(count, step)``,
    or ``(0, 0)`` when there is no such run.
    """
    best_c = floor
    best_m = 0
    for q in range(b + 1, n):
        if search[q] == 0:
            continue
        m = q - b
        # steps only grow from here, so the reachable count only shrinks
        if (n - 1 - b) // m + 1 <= best_c:
            break
        c = 2
        p = q + m
        while p < n and search[p] != 0:
            c += 1
            p += m
        if c > best_c:
            best_c = c
            best_m = m
    if best_m == 0:
        return 0, 0
    return best_c, best_m


@jit
def find_first(search, mask, min_run):
    n = search.size
    for b in range(n):
        if search[b] == 0 or mask[b] != 0:
            continue
        c, m = best_run(search, b, n)
        if c >= min_run:
            return c, b, m
    return 0, -1, 0


@jit
def treat_block(bits, mode2, min_run, guard, max_treatments):
    """Encode one block; returns ``(residual, triples)`` with triples as (count, start, step) rows."""
    n = bits.size
    search = bits.copy()
    claimed = np.zeros(n, dtype=np.uint8)
    ones = np.int64(0)
    for i in range(n):
        ones += search[i]
    out = np.empty((ones + 1, 3), dtype=np.int64)
    k = 0
    for b in range(n):
        if max_treatments >= 0 and k >= max_treatments:
            break
        if search[b] == 0 or claimed[b] != 0:
            continue
        c, m = best_run(search, b, n, guard_floor(min_run, guard, ones, n))
        if c < min_run:
            continue
        if mode2:
            new = 0
            for j in range(c):
                if claimed[b + j * m] == 0:
                    new += 1
        else:
            new = c
        if guard and not guard_ok(c, b, m, new, ones, n):
            continue
        out[k, 0] = c
        out[k, 1] = b
        out[k, 2] = m
        k += 1
        for j in range(c):
            p = b + j * m
            if mode2:
                claimed[p] = 1
            else:
                search[p] = 0
        ones -= new
    if mode2:
        for i in range(n):
            if claimed[i] != 0:
                search[i] = 0
    return search, out[:k].copy()


@jit
def treat_stream(bits, block_size, mode2, min_run, guard, max_treatments):
    """Run ``treat_block`` over consecutive blocks.

    Returns the residual stream, all triples concatenated in block order, and
    the number of triples per block.
    """
    n = bits.size
    nb = (n + block_size - 1) // block_size
    residual = np.empty(n, dtype=np.uint8)
    counts = np.zeros(nb, dtype=np.int64)
    parts = []
    total = 0
    for i in range(nb):
        lo = i * block_size
        hi = min(lo + block_size, n)
        res, tr = treat_block(bits[lo:hi], mode2, min_run, guard, max_treatments)
        residual[lo:hi] = res
        counts[i] = tr.shape[0]
        total += tr.shape[0]
        parts.append(tr)
    triples = np.empty((total, 3), dtype=np.int64)
    k = 0
    for tr in parts:
        for r in range(tr.shape[0]):
            triples[k, 0] = tr[r, 0]
            triples[k, 1] = tr[r, 1]
            triples[k, 2] = tr[r, 2]
            k += 1
    return residual, triples, counts


@jit
def anchor_run_lengths(bits, block_size):
    """Best run length for every 1 in the stream, searched on the untouched bits of its block."""
    n = bits.size
    total = np.int64(0)
    for i in range(n):
        total += bits[i]
    out = np.empty(total, dtype=np.int64)
    k = 0
    for lo in range(0, n, block_size):
        hi = min(lo + block_size, n)
        blk = bits[lo:hi]
        for b in range(hi - lo):
            if blk[b] != 0:
                c, _ = best_run(blk, b, hi - lo)
                out[k] = max(c, 1)
                k += 1
    return out


# numpy fallback -------------------------------------------------------------

def best_run_numpy(search, b, n, later=None):
    if later is None:
        later = np.flatnonzero(search[b + 1:]) + (b + 1)
    if later.size == 0:
        return 0, 0
    steps = later - b
    counts = np.full(steps.size, 2, dtype=np.int64)
    pos = later + steps
    alive = np.arange(steps.size)
    while alive.size:
        p = pos[alive]
        ok = p < n
        ok[ok] = search[p[ok]] != 0
        alive = alive[ok]
        counts[alive] += 1
        pos[alive] += steps[alive]
    i = int(np.argmax(counts))
    return int(counts[i]), int(steps[i])


def treat_block_numpy(bits, mode2, min_run, guard, max_treatments):
    n = bits.size
    search = bits.copy()
    claimed = np.zeros(n, dtype=np.uint8)
    ones = int(np.count_nonzero(search))
    triples = []
    for b in np.flatnonzero(bits).tolist():
        if 0 <= max_treatments <= len(triples):
            break
        if search[b] == 0 or claimed[b]:
            continue
        c, m = best_run_numpy(search, b, n)
        if c < min_run:
            continue
        covered = b + m * np.arange(c)
        new = int(np.count_nonzero(claimed[covered] == 0)) if mode2 else c
        if guard and not guard_ok(c, b, m, new, ones, n):
            continue
        triples.append((c, b, m))
        if mode2:
            claimed[covered] = 1
        else:
            search[covered] = 0
        ones -= new
    if mode2:
        search[claimed != 0] = 0
    return search, np.array(triples, dtype=np.int64).reshape(-1, 3)


def treat_stream_numpy(bits, block_size, mode2, min_run, guard, max_treatments):
    n = bits.size
    residual = np.empty(n, dtype=np.uint8)
    parts = []
    for lo in range(0, n, block_size):
        res, tr = treat_block_numpy(bits[lo:lo + block_size], mode2, min_run, guard, max_treatments)
        residual[lo:lo + block_size] = res
        parts.append(tr)
    counts = np.array([p.shape[0] for p in parts], dtype=np.int64)
    triples = np.concatenate(parts) if parts else np.empty((0, 3), dtype=np.int64)
    return residual, triples, counts


def find_first_numpy(search, mask, min_run):
    n = search.size
    for b in np.flatnonzero((search != 0) & (mask == 0)).tolist():
        c, m = best_run_numpy(search, b, n)
        if c >= min_run:
            return c, b, m
    return 0, -1, 0


def anchor_run_lengths_numpy(bits, block_size):
    out = []
    for lo in range(0, bits.size, block_size):
        blk = bits[lo:lo + block_size]
        ones = np.flatnonzero(blk)
        for j, b in enumerate(ones.tolist()):
            c, _ = best_run_numpy(blk, b, blk.size, ones[j + 1:])
            out.append(max(c, 1))
    return np.array(out, dtype=np.int64)


if HAVE_NUMBA:
    run_treatments = treat_stream
    run_find_first = find_first
    run_anchor_lengths = anchor_run_lengths
else:
    run_treatments = treat_stream_numpy
    run_find_first = find_first_numpy
    run_anchor_lengths = anchor_run_lengths_numpy
