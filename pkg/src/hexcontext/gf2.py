"""GF(2) linear algebra on bit-packed vectors, plus compiled search kernels.

Vectors are Python ints (bit i = coordinate i) at the API level and arrays of
``uint64`` words inside the numba kernels.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from math import comb

import numba
import numpy as np

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def to_words(vec: int, nwords: int) -> np.ndarray:
    out = np.zeros(nwords, dtype=np.uint64)
    for i in range(nwords):
        out[i] = (vec >> (64 * i)) & 0xFFFFFFFFFFFFFFFF
    return out


def from_words(words) -> int:
    return sum(int(w) << (64 * i) for i, w in enumerate(words))


def nwords_for(bits: int) -> int:
    return max(1, (bits + 63) // 64)


def rank_basis(vectors) -> tuple[int, list[int], list[int]]:
    """Rank of a list of int vectors, the indices of an independent subset, and
    an echelon basis (reduced by leading bit)."""
    pivots: dict[int, int] = {}
    chosen = []
    for i, v in enumerate(vectors):
        r = v
        while r:
            top = r.bit_length() - 1
            if top in pivots:
                r ^= pivots[top]
            else:
                pivots[top] = r
                chosen.append(i)
                break
    return len(chosen), chosen, list(pivots.values())


def solve(rows, rhs, nvars: int) -> int | None:
    """One solution x of <rows[i], x> = rhs[i] over GF(2), or None."""
    pivots: dict[int, int] = {}  # leading var -> augmented row
    flag = 1 << nvars
    for r, b in zip(rows, rhs):
        aug = r | (flag if b else 0)
        while aug & (flag - 1):
            top = (aug & (flag - 1)).bit_length() - 1
            if top in pivots:
                aug ^= pivots[top]
            else:
                pivots[top] = aug
                break
        else:
            if aug & flag:
                return None
    x = 0
    for top in sorted(pivots):
        aug = pivots[top]
        val = (aug >> nvars) & 1
        val ^= ((aug & ((1 << top) - 1)) & x).bit_count() & 1
        if val:
            x |= 1 << top
    return x


# -- compiled kernels ---------------------------------------------------------------

@numba.njit(cache=True, inline="always")
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return (x * _H01) >> np.uint64(56)


@numba.njit(cache=True)
def _weight(v):
    s = 0
    for t in range(v.shape[0]):
        s += _popcount64(v[t])
    return s


@numba.njit(cache=True, nogil=True)
def _gray_walk(basis, target, start, stop):
    """Gray-code walk over target + span(basis) for steps [start, stop).

    One basis XOR and one popcount per step.  Returns (best weight, gray code
    of the first word reaching it).
    """
    r = basis.shape[0]
    nw = target.shape[0]
    cur = target.copy()
    g0 = start ^ (start >> 1)
    for j in range(r):
        if (g0 >> j) & 1:
            for t in range(nw):
                cur[t] ^= basis[j, t]
    best = _weight(cur)
    best_g = g0
    for i in range(start + 1, stop):
        j = 0
        ii = i
        while (ii & 1) == 0:
            ii >>= 1
            j += 1
        for t in range(nw):
            cur[t] ^= basis[j, t]
        w = _weight(cur)
        if w < best:
            best = w
            best_g = i ^ (i >> 1)
    return best, best_g


@numba.njit(cache=True)
def _gray_collect(basis, target, want, cap, out):
    """Store up to ``cap`` gray indices whose word has weight ``want``."""
    r = basis.shape[0]
    nw = target.shape[0]
    cur = target.copy()
    n = 0
    if _weight(cur) == want:
        out[0] = 0
        n = 1
    for i in range(1, 1 << r):
        j = 0
        ii = i
        while (ii & 1) == 0:
            ii >>= 1
            j += 1
        for t in range(nw):
            cur[t] ^= basis[j, t]
        if _weight(cur) == want:
            if n < cap:
                out[n] = i ^ (i >> 1)
            n += 1
    return n


@numba.njit(cache=True)
def _combo_min(rows, tags, maxw, best_in):
    """Minimum weight of XORs of <= maxw rows whose tag parity is 1.

    Returns (best, chosen indices padded with -1).
    """
    k, nw = rows.shape
    acc = np.zeros((maxw + 1, nw), dtype=np.uint64)
    tagacc = np.zeros(maxw + 1, dtype=np.int64)
    idx = np.full(maxw + 1, -1, dtype=np.int64)
    best = best_in
    best_idx = np.full(maxw, -1, dtype=np.int64)
    if maxw == 0 or k == 0:
        return best, best_idx
    d = 0
    idx[0] = 0
    while d >= 0:
        if idx[d] >= k:
            d -= 1
            if d >= 0:
                idx[d] += 1
            continue
        for t in range(nw):
            acc[d + 1, t] = acc[d, t] ^ rows[idx[d], t]
        tagacc[d + 1] = tagacc[d] ^ tags[idx[d]]
        if tagacc[d + 1] == 1:
            w = _weight(acc[d + 1])
            if w < best:
                best = w
                for u in range(maxw):
                    best_idx[u] = idx[u] if u <= d else -1
        if d + 1 < maxw:
            idx[d + 1] = idx[d] + 1
            d += 1
        else:
            idx[d] += 1
    return best, best_idx


# -- Python-level drivers ------------------------------------------------------------

def _pack(basis: list[int], nw: int) -> np.ndarray:
    return np.array([to_words(v, nw) for v in basis], dtype=np.uint64).reshape(len(basis), nw)


def coset_min_gray(basis: list[int], target: int, nbits: int,
                   workers: int = 1) -> tuple[int, int]:
    """min wt(target + m), m in span(basis); returns (weight, gray code of m).

    With ``workers`` > 1 the walk is split into contiguous index ranges run on
    threads; the merge keeps the earliest range reaching the minimum, so the
    reported optimum does not depend on the worker count.
    """
    nw = nwords_for(nbits)
    b = _pack(basis, nw)
    t = to_words(target, nw)
    total = 1 << len(basis)
    parts = max(1, min(workers, total // 4096 or 1))
    if parts == 1:
        w, g = _gray_walk(b, t, 0, total)
        return int(w), int(g)
    bounds = [total * i // parts for i in range(parts + 1)]
    with ThreadPoolExecutor(parts) as pool:
        res = list(pool.map(lambda i: _gray_walk(b, t, bounds[i], bounds[i + 1]), range(parts)))
    w, g = min(res, key=lambda r: r[0])
    return int(w), int(g)


def coset_words_of_weight(basis: list[int], target: int, nbits: int, weight: int,
                          cap: int = 1 << 16) -> tuple[int, list[int]]:
    """All (up to cap) gray codes g with wt(target + span-element g) == weight."""
    nw = nwords_for(nbits)
    b = _pack(basis, nw)
    out = np.zeros(cap, dtype=np.int64)
    n = _gray_collect(b, to_words(target, nw), weight, cap, out)
    return int(n), [int(x) for x in out[: min(n, cap)]]


def combine(basis: list[int], gray: int) -> int:
    v = 0
    j = 0
    while gray:
        if gray & 1:
            v ^= basis[j]
        gray >>= 1
        j += 1
    return v


def systematic_rows(gens: list[int], tags: list[int], positions: list[int]):
    """Row-reduce tagged generators so that ``positions`` carry an identity.

    Returns the reduced (row, tag) list ordered like ``positions`` or None if
    the generators restricted to those positions are singular.
    """
    rows = list(zip(gens, tags))
    out = []
    for pos in positions:
        bit = 1 << pos
        piv = next((i for i, (r, _) in enumerate(rows) if r & bit), None)
        if piv is None:
            return None
        pr, pt = rows.pop(piv)
        rows = [(r ^ pr, t ^ pt) if r & bit else (r, t) for r, t in rows]
        out = [(r ^ pr, t ^ pt) if r & bit else (r, t) for r, t in out]
        out.append((pr, pt))
    return out


def _greedy_sets(gens: list[int], order) -> list[list[int]]:
    k = len(gens)
    used: set[int] = set()
    sets = []
    while True:
        chosen: list[int] = []
        pivots: dict[int, int] = {}
        for pos in order:
            if pos in used:
                continue
            r = sum(((g >> pos) & 1) << i for i, g in enumerate(gens))
            while r:
                top = r.bit_length() - 1
                if top in pivots:
                    r ^= pivots[top]
                else:
                    pivots[top] = r
                    chosen.append(pos)
                    break
            if len(chosen) == k:
                break
        if len(chosen) < k:
            return sets
        sets.append(chosen)
        used.update(chosen)


def disjoint_information_sets(gens: list[int], nbits: int, tries: int = 64,
                              seed: int = 0) -> list[list[int]]:
    """Pairwise-disjoint coordinate sets on which ``gens`` has full rank.

    Greedy over the natural order and then over ``tries`` shuffled orders,
    keeping the largest family found.
    """
    rng = random.Random(seed)
    order = list(range(nbits))
    best = _greedy_sets(gens, order)
    ceiling = nbits // max(1, len(gens))
    for _ in range(tries):
        if len(best) >= ceiling:
            break
        rng.shuffle(order)
        cand = _greedy_sets(gens, order)
        if len(cand) > len(best):
            best = cand
    return best


def infoset_coset_bound(basis: list[int], target: int, nbits: int, maxw: int):
    """Lower bound (and best word found) for min wt over target + span(basis).

    Builds the code spanned by ``basis`` and ``target`` (tagging ``target``),
    chooses disjoint information sets and enumerates every codeword of weight
    <= maxw on each set.  A coset word missed by all enumerations has weight
    >= maxw + 1 on each of the m disjoint sets, hence >= m (maxw + 1).

    Returns (lower bound, best weight found, best word or None, m, enumerated).
    """
    gens = list(basis) + [target]
    tags = [0] * len(basis) + [1]
    sets = disjoint_information_sets(gens, nbits)
    nw = nwords_for(nbits)
    best = nbits + 1
    best_word = None
    enumerated = 0
    for positions in sets:
        red = systematic_rows(gens, tags, positions)
        rows = np.array([to_words(r, nw) for r, _ in red], dtype=np.uint64)
        tg = np.array([t for _, t in red], dtype=np.int64)
        w, idx = _combo_min(rows, tg, maxw, best)
        enumerated += sum(comb(len(red), i) for i in range(1, maxw + 1))
        if w < best:
            best = int(w)
            word = 0
            for i in idx:
                if i >= 0:
                    word ^= red[i][0]
            best_word = word
    m = len(sets)
    bound = min(best, m * (maxw + 1))
    return bound, best, best_word, m, enumerated
