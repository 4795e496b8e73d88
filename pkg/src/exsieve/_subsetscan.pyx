# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset-scan kernel.

Same contract as _subsetscan_py.subset_scan; bitsets are split into
64-bit words so the inner loops run on machine integers.
"""

from libc.stdint cimport uint64_t

import array as _array

cdef extern from *:
    """
    static inline int exsieve_ctz64(unsigned long long x) {
        return __builtin_ctzll(x);
    }
    """
    int exsieve_ctz64(unsigned long long x) nogil


cdef void _dfs(uint64_t* events, int n, int W, int natoms, int k_max,
               uint64_t* inter, int depth, int start,
               uint64_t* counts, uint64_t* unions) noexcept nogil:
    cdef int i, w, base
    cdef uint64_t word, nonzero
    cdef uint64_t* prev = inter + (depth - 1) * W
    cdef uint64_t* cur = inter + depth * W
    cdef uint64_t* urow = unions + depth * W
    cdef uint64_t* crow = counts + depth * natoms
    for i in range(start, n):
        nonzero = 0
        for w in range(W):
            word = prev[w] & events[i * W + w]
            cur[w] = word
            nonzero |= word
        if nonzero == 0:
            continue  # every superset also has an empty intersection
        for w in range(W):
            word = cur[w]
            urow[w] |= word
            base = w << 6
            while word:
                crow[base + exsieve_ctz64(word)] += 1
                word &= word - 1
        if depth < k_max:
            _dfs(events, n, W, natoms, k_max, inter, depth + 1, i + 1,
                 counts, unions)


def subset_scan(masks, int natoms, int k_max):
    cdef int n = len(masks)
    cdef int w, a, k
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    if k_max > n:
        k_max = n
    cdef int W = (natoms + 63) >> 6
    if W == 0:
        W = 1

    # shifts must run on Python ints: a C-level 1 << natoms wraps for natoms >= 64
    full = (<object> 1 << natoms) - 1
    mask64 = (<object> 1 << 64) - 1
    flat = []
    for m in masks:
        for w in range(W):
            flat.append((m >> (64 * w)) & mask64)

    ev_arr = _array.array("Q", flat if flat else [0])
    inter_arr = _array.array("Q", [0]) * ((k_max + 1) * W)
    counts_arr = _array.array("Q", [0]) * ((k_max + 1) * natoms if natoms else 1)
    unions_arr = _array.array("Q", [0]) * ((k_max + 1) * W)

    cdef uint64_t[::1] ev = ev_arr
    cdef uint64_t[::1] inter = inter_arr
    cdef uint64_t[::1] cnt = counts_arr
    cdef uint64_t[::1] uni = unions_arr

    for w in range(W):
        inter[w] = (full >> (64 * w)) & mask64
        uni[w] = inter[w]
    for a in range(natoms):
        cnt[a] = 1

    if k_max >= 1 and n >= 1 and natoms >= 1:
        _dfs(&ev[0], n, W, natoms, k_max, &inter[0], 1, 0, &cnt[0], &uni[0])

    counts = []
    for k in range(k_max + 1):
        row = []
        for a in range(natoms):
            row.append(int(cnt[k * natoms + a]))
        counts.append(row)
    unions = []
    for k in range(k_max + 1):
        u = 0
        for w in range(W):
            u |= int(uni[k * W + w]) << (64 * w)
        unions.append(u)
    return counts, unions
