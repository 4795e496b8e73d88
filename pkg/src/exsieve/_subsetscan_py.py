"""Pure-Python subset-scan kernel, the reference implementation.

Enumerates all index subsets {i_1 < ... < i_k} of a family of atom
bitsets, for every size k up to `k_max`, in lexicographic order with the
(k-1)-prefix intersection reused at each extension.  Subtrees whose
prefix intersection is already empty are pruned: every deeper subset has
an empty intersection and contributes nothing to counts or unions.

Outputs, for k = 0..k_max:
  counts[k][a] -- number of k-subsets whose intersection contains atom a
  unions[k]    -- bitset union of all k-subset intersections

Row 0 uses the empty-intersection convention (the whole space).
"""

from __future__ import annotations

from typing import Sequence


def subset_scan(masks: Sequence[int], natoms: int, k_max: int) -> tuple[list[list[int]], list[int]]:
    n = len(masks)
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    k_max = min(k_max, n)
    full = (1 << natoms) - 1
    counts = [[0] * natoms for _ in range(k_max + 1)]
    unions = [0] * (k_max + 1)
    counts[0] = [1] * natoms
    unions[0] = full
    if k_max >= 1 and n >= 1:
        _dfs(list(masks), n, k_max, counts, unions, full, 1, 0)
    return counts, unions


def _dfs(masks, n, k_max, counts, unions, inter, depth, start):
    for i in range(start, n):
        m = inter & masks[i]
        if not m:
            continue
        unions[depth] |= m
        row = counts[depth]
        mm = m
        while mm:
            low = mm & -mm
            row[low.bit_length() - 1] += 1
            mm ^= low
        if depth < k_max:
            _dfs(masks, n, k_max, counts, unions, m, depth + 1, i + 1)
