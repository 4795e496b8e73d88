"""Finite-family inclusion-exclusion sums via direct subset enumeration.

S_{k,n} = sum over k-subsets {i_1 < ... < i_k} of Pr(A_{i_1} & ... & A_{i_k}),
computed by enumerating every k-subset whose intersection is nonempty.
The kernel counts, per atom, how many k-subset intersections contain it;
the weighted total of those counts is exactly the subset sum above with
the measure expanded atom by atom.  No lattice or Moebius shortcuts.

Enumeration is exponential in the number of events by design, so every
entry point that triggers a scan enforces an event cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BadK, EventCapExceeded
from .kernel import subset_scan
from .moments import TAIL, Bracket
from .numerics import Rat, binom
from .space import EventFamily

DEFAULT_MAX_EVENTS = 24


def _check_cap(fam: EventFamily, max_events: int | None) -> None:
    cap = DEFAULT_MAX_EVENTS if max_events is None else max_events
    if fam.n > cap:
        raise EventCapExceeded(
            f"family has {fam.n} events, above the cap of {cap}; "
            f"raise max_events explicitly to proceed"
        )


@lru_cache(maxsize=64)
def _weighted_rows(fam: EventFamily, k_max: int) -> tuple[tuple[Rat, ...], tuple[int, ...]]:
    """(S_{0,n}..S_{k_max,n}, union masks by subset size) in one scan.

    Cached: families are immutable and repeated bracket/identity queries
    on one family should not redo the exponential scan.
    """
    counts, unions = subset_scan(fam.masks, fam.space.natoms, k_max)
    weights = fam.space.weights
    sums = tuple(
        sum((c * w for c, w in zip(row, weights) if c), start=Fraction(0))
        for row in counts
    )
    return sums, tuple(unions)


def compute_all_Skn(
    fam: EventFamily, k_max: int | None = None, max_events: int | None = None
) -> list[Rat]:
    """[S_{0,n}, S_{1,n}, ..., S_{k_max,n}] with S_{0,n} = 1.

    Entries with k > n are 0 (there are no k-subsets to sum over).
    k_max defaults to n.
    """
    _check_cap(fam, max_events)
    n = fam.n
    if k_max is None:
        k_max = n
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    sums, _ = _weighted_rows(fam, min(k_max, n))
    return list(sums) + [Fraction(0)] * (k_max - n)


def compute_Skn(fam: EventFamily, k: int, max_events: int | None = None) -> Rat:
    """S_{k,n} for one k >= 1; 0 when k exceeds the family size."""
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")
    if k > fam.n:
        return Fraction(0)
    return compute_all_Skn(fam, k_max=k, max_events=max_events)[k]


def union_prob_bruteforce(fam: EventFamily) -> Rat:
    """Pr(A_1 | ... | A_n) straight from the bitmask union; the oracle side."""
    mask = 0
    for m in fam.masks:
        mask |= m
    return fam.space.measure(mask)


def union_of_k_intersections(
    fam: EventFamily, k: int, max_events: int | None = None
) -> Rat:
    """Pr of the union, over all k-subsets, of the k-wise intersections."""
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")
    if k > fam.n:
        return Fraction(0)
    _check_cap(fam, max_events)
    _, unions = _weighted_rows(fam, fam.n)
    return fam.space.measure(unions[k])


@dataclass(frozen=True)
class IdentityReport:
    """Union probability two ways: directly, and by the alternating sum."""

    lhs: Rat
    rhs: Rat

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def verify_finite_identity(fam: EventFamily, max_events: int | None = None) -> IdentityReport:
    """Pr(union) == sum_{k=1}^{n} (-1)^(k-1) S_{k,n}, both sides exact."""
    lhs = union_prob_bruteforce(fam)
    sums = compute_all_Skn(fam, max_events=max_events)
    rhs = Fraction(0)
    for k in range(1, fam.n + 1):
        rhs = rhs + sums[k] if k % 2 == 1 else rhs - sums[k]
    return IdentityReport(lhs=lhs, rhs=rhs)


def verify_generalized_identity(
    fam: EventFamily, k: int, max_events: int | None = None
) -> IdentityReport:
    """Union of k-wise intersections == sum_j (-1)^j C(j+k-1, k-1) S_{j+k,n}."""
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")
    _check_cap(fam, max_events)
    n = fam.n
    if k > n:
        return IdentityReport(lhs=Fraction(0), rhs=Fraction(0))
    sums, unions = _weighted_rows(fam, n)
    lhs = fam.space.measure(unions[k])
    rhs = Fraction(0)
    for j in range(0, n - k + 1):
        term = binom(j + k - 1, k - 1) * sums[j + k]
        rhs = rhs + term if j % 2 == 0 else rhs - term
    return IdentityReport(lhs=lhs, rhs=rhs)


def bonferroni_bracket_finite(
    fam: EventFamily, k: int, d: int, r: int, max_events: int | None = None
) -> Bracket:
    """Finite-family bracket around the union of k-wise intersections.

    Truncating the alternating sum in verify_generalized_identity at any
    odd cutoff 2d'+1 bounds the target from below and at any even cutoff
    2r' from above.  The reported bounds are the best of those
    truncations up to the requested depths (largest lower over d' <= d,
    smallest upper over r' <= r), so deepening never loosens a bound:
    lower is nondecreasing in d and upper is nonincreasing in r, and
    each individual truncation being valid keeps the target inside.
    Terms with index above n are zero, so any nonnegative depths are
    accepted.
    """
    if not 1 <= k <= fam.n:
        raise BadK(f"k must be in 1..{fam.n}, got {k}")
    if d < 0 or r < 0:
        raise ValueError("depths d and r must be nonnegative")
    needed = k + max(2 * d + 1, 2 * r)
    sums = compute_all_Skn(fam, k_max=max(needed, fam.n), max_events=max_events)

    best_lower = None
    best_upper = None
    partial = Fraction(0)
    for j in range(max(2 * d + 1, 2 * r) + 1):
        term = binom(j + k - 1, k - 1) * sums[j + k]
        partial = partial + term if j % 2 == 0 else partial - term
        if j % 2 == 0 and j <= 2 * r:
            best_upper = partial if best_upper is None else min(best_upper, partial)
        if j % 2 == 1 and j <= 2 * d + 1:
            best_lower = partial if best_lower is None else max(best_lower, partial)
    return Bracket(k=k, d=d, r=r, target=TAIL, lower=best_lower, upper=best_upper)


@dataclass(frozen=True)
class SieveResult:
    """Moment prefix at level k: S_{k,n}, S_{k+1,n}, ..., S_{n,n}.

    union_prob is the probability of the union of all k-wise
    intersections, which for k = 1 is the plain union of the family.
    """

    k: int
    n: int
    skn_prefix: tuple[Rat, ...]
    union_prob: Rat


def sieve_report(fam: EventFamily, k: int = 1, max_events: int | None = None) -> SieveResult:
    """Level-k prefix and union probability from a single k_max = n scan."""
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")
    _check_cap(fam, max_events)
    sums, unions = _weighted_rows(fam, fam.n)
    if k > fam.n:
        return SieveResult(k=k, n=fam.n, skn_prefix=(), union_prob=Fraction(0))
    union = fam.space.measure(unions[k])
    return SieveResult(k=k, n=fam.n, skn_prefix=tuple(sums[k:]), union_prob=union)
