"""Compiled branch-and-bound kernel for the maximum-clique search.

Vertex sets are arrays of uint64 words.  The kernel mirrors the pure
Python solver in search.py step for step (same vertex order, same
coloring, same pruning), it just runs it as machine code; numba is
optional and the caller falls back to the Python solver without it.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)
_ZERO = np.uint64(0)

# Candidate sets below this size skip the recoloring repair: deep small
# nodes dominate the node count while the pruning payoff sits in the
# large shallow ones.
RECOLOR_MIN_SIZE = 64


@njit(cache=True)
def _popcount(x):
    x = x - ((x >> _ONE) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return int((x * _H01) >> np.uint64(56))


@njit(cache=True)
def _lowest_bit_index(x):
    # index of the least significant set bit (x must be nonzero)
    low = x & (~x + _ONE)
    return _popcount(low - _ONE)


@njit(cache=True)
def _solve_kernel(adj, vertex_count, words, budget, seed, seed_size,
                  best_clique):
    """Iterative Tomita-style search; returns (best, nodes, exhausted)."""
    frames = vertex_count + 2
    rem = np.zeros((frames, words), dtype=np.uint64)
    order = np.zeros((frames, vertex_count), dtype=np.int32)
    colors = np.zeros((frames, vertex_count), dtype=np.int32)
    idx = np.zeros(frames, dtype=np.int64)
    chosen = np.zeros(frames, dtype=np.int32)
    uncolored = np.zeros(words, dtype=np.uint64)
    avail = np.zeros(words, dtype=np.uint64)
    classes = np.zeros((vertex_count + 1, words), dtype=np.uint64)

    best = seed_size
    for i in range(seed_size):
        best_clique[i] = seed[i]
    nodes = 0
    exhausted = False

    # root candidate set: every vertex
    for w in range(words):
        rem[0, w] = ~_ZERO
    tail = vertex_count & 63
    if tail:
        rem[0, words - 1] = (_ONE << np.uint64(tail)) - _ONE

    depth = 0
    nodes += 1
    if nodes > budget:
        return best, nodes, True

    # color the root frame
    root_threshold = best if vertex_count >= RECOLOR_MIN_SIZE else 0
    count = _color_frame(adj, rem[0], order[0], colors[0], words, uncolored,
                         avail, classes, root_threshold)
    idx[0] = count - 1

    while depth >= 0:
        i = idx[depth]
        if i < 0:
            depth -= 1
            continue
        if depth + colors[depth, i] <= best:
            depth -= 1  # every earlier vertex has an equal or lower color
            continue
        v = order[depth, i]
        idx[depth] = i - 1
        w_v = v >> 6
        bit = _ONE << np.uint64(v & 63)
        rem[depth, w_v] &= ~bit
        empty = True
        for w in range(words):
            word = rem[depth, w] & adj[v, w]
            rem[depth + 1, w] = word
            if word:
                empty = False
        if empty:
            if depth + 1 > best:
                best = depth + 1
                for d in range(depth):
                    best_clique[d] = chosen[d]
                best_clique[depth] = v
            continue
        chosen[depth] = v
        nodes += 1
        if nodes > budget:
            exhausted = True
            break
        # cheap bound before the coloring pays for itself
        size = 0
        for w in range(words):
            size += _popcount(rem[depth + 1, w])
        if depth + 1 + size <= best:
            continue
        depth += 1
        count = _color_frame(adj, rem[depth], order[depth], colors[depth],
                             words, uncolored, avail, classes, best - depth)
        idx[depth] = count - 1

    return best, nodes, exhausted


@njit(cache=True)
def _try_recolor(adj, classes, class_count, v, threshold, words):
    """Move v into a class below the threshold via a single-conflict swap."""
    limit = threshold - 1
    if limit > class_count:
        limit = class_count
    for c1 in range(limit):
        conflicts = 0
        w_hit = -1
        for w in range(words):
            overlap = classes[c1, w] & adj[v, w]
            if overlap:
                conflicts += _popcount(overlap)
                if conflicts > 1:
                    break
                w_hit = (w << 6) + _lowest_bit_index(overlap)
        if conflicts == 0:
            classes[c1, v >> 6] |= _ONE << np.uint64(v & 63)
            return True
        if conflicts > 1:
            continue
        for c2 in range(c1 + 1, limit):
            clean = True
            for w in range(words):
                if classes[c2, w] & adj[w_hit, w]:
                    clean = False
                    break
            if clean:
                classes[c1, w_hit >> 6] &= ~(_ONE << np.uint64(w_hit & 63))
                classes[c1, v >> 6] |= _ONE << np.uint64(v & 63)
                classes[c2, w_hit >> 6] |= _ONE << np.uint64(w_hit & 63)
                return True
    return False


@njit(cache=True)
def _color_frame(adj, pool, order_row, colors_row, words, uncolored, avail,
                 classes, threshold):
    """Greedy sequential coloring in index order, with the recoloring repair.

    A vertex headed for a color past the pruning threshold is swapped
    into a lower class when a single-conflict exchange allows it; the
    (order, colors) output is sorted by color either way.
    """
    for w in range(words):
        uncolored[w] = pool[w]
    class_count = 0
    while True:
        start = -1
        for w in range(words):
            if uncolored[w]:
                start = w
                break
        if start < 0:
            break
        for w in range(words):
            avail[w] = uncolored[w]
            classes[class_count, w] = _ZERO
        while True:
            v = -1
            for w in range(start, words):
                if avail[w]:
                    v = (w << 6) + _lowest_bit_index(avail[w])
                    break
            if v < 0:
                break
            bit = _ONE << np.uint64(v & 63)
            avail[v >> 6] &= ~bit
            uncolored[v >> 6] &= ~bit
            if class_count + 1 > threshold > 1 and _try_recolor(
                    adj, classes, class_count, v, threshold, words):
                continue
            classes[class_count, v >> 6] |= bit
            for w in range(words):
                avail[w] &= ~adj[v, w]
        nonempty = False
        for w in range(words):
            if classes[class_count, w]:
                nonempty = True
                break
        if nonempty:
            class_count += 1
    count = 0
    for c in range(class_count):
        for w in range(words):
            word = classes[c, w]
            while word:
                v = (w << 6) + _lowest_bit_index(word)
                word &= word - _ONE
                order_row[count] = v
                colors_row[count] = c + 1
                count += 1
    return count


def masks_to_words(adjacency, vertex_count: int) -> np.ndarray:
    """Pack python-int adjacency masks into a (V, ceil(V/64)) uint64 array."""
    words = max(1, (vertex_count + 63) // 64)
    packed = np.zeros((vertex_count, words), dtype=np.uint64)
    for v, mask in enumerate(adjacency):
        w = 0
        while mask:
            packed[v, w] = mask & 0xFFFFFFFFFFFFFFFF
            mask >>= 64
            w += 1
    return packed


def solve_bitset(adjacency, budget: int, seed) -> tuple[int, list[int], int, bool]:
    """Run the compiled kernel over python-int adjacency masks."""
    vertex_count = len(adjacency)
    if vertex_count == 0:
        return 0, [], 0, False
    packed = masks_to_words(adjacency, vertex_count)
    seed_arr = np.asarray(list(seed), dtype=np.int32)
    best_clique = np.zeros(vertex_count, dtype=np.int32)
    best, nodes, exhausted = _solve_kernel(
        packed, vertex_count, packed.shape[1], budget, seed_arr, len(seed_arr),
        best_clique,
    )
    return best, [int(x) for x in best_clique[:best]], int(nodes), bool(exhausted)
