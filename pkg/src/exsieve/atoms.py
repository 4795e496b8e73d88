"""Atom decomposition of an event family and the occupancy route to S_k.

Group the atoms of the space by signature U(atom) = {i : atom in A_i}
(1-based event ids).  The groups B_U partition the space, and with
T_j = total weight of atoms covered by exactly j events,

    S_{k,n} = sum_{j>=0} C(j+k, k) T_{j+k}

because each atom in a j-covered cell lies in exactly C(j, k) of the
k-wise intersections.  T is the pmf of the occupancy count X = number
of events containing a random atom, which is the bridge to the
binomial-moment machinery: S_k = E[C(X, k)].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numerics import Rat, binom
from .space import EventFamily, ZPlusPmf
from .sieve import compute_all_Skn


@dataclass(frozen=True)
class AtomDecomposition:
    """Cells keyed by signature (frozenset of 1-based event ids).

    Cells realized by at least one atom are present even at weight 0;
    signatures no atom realizes are absent.  t[j] is the total weight
    covered by exactly j events, j = 0..n.
    """

    n: int
    cells: dict[frozenset[int], Rat]
    t: tuple[Rat, ...]

    @property
    def occupancy_values(self) -> tuple[Rat, ...]:
        return self.t


def decompose(fam: EventFamily) -> AtomDecomposition:
    """Signature-hash every atom into its cell and tally T_j."""
    n = fam.n
    masks = fam.masks
    cells: dict[frozenset[int], Rat] = {}
    t = [Fraction(0)] * (n + 1)
    for a, w in enumerate(fam.space.weights):
        bit = 1 << a
        sig = frozenset(i + 1 for i, m in enumerate(masks) if m & bit)
        cells[sig] = cells.get(sig, Fraction(0)) + w
        t[len(sig)] += w
    return AtomDecomposition(n=n, cells=cells, t=tuple(t))


def compute_Tj(dec: AtomDecomposition) -> list[Rat]:
    """Recompute the exact-coverage weights from the cells alone."""
    t = [Fraction(0)] * (dec.n + 1)
    for sig, w in dec.cells.items():
        t[len(sig)] += w
    return t


def occupancy_pmf(dec: AtomDecomposition) -> ZPlusPmf:
    """Pmf of the occupancy count X; feeds the series machinery directly."""
    return ZPlusPmf.explicit(dec.t)


def moments_from_decomposition(dec: AtomDecomposition, k_max: int | None = None) -> list[Rat]:
    """[S_0..S_k_max] via S_k = sum_j C(j+k, k) T_{j+k}; exact."""
    n = dec.n
    if k_max is None:
        k_max = n
    out = []
    for k in range(k_max + 1):
        out.append(
            sum((binom(j + k, k) * dec.t[j + k] for j in range(n - k + 1)), start=Fraction(0))
        )
    return out


@dataclass(frozen=True)
class MomentIdentityRow:
    k: int
    sieve_value: Rat
    atom_value: Rat

    @property
    def equal(self) -> bool:
        return self.sieve_value == self.atom_value


def verify_sk_tk_identity(
    fam: EventFamily, k_max: int | None = None, max_events: int | None = None
) -> list[MomentIdentityRow]:
    """S_{k,n} by subset enumeration vs. by coverage counts, k = 1..k_max.

    The two routes share no code path above the space weights, so
    agreement cross-checks both.  k_max defaults to n.
    """
    if k_max is None:
        k_max = fam.n
    sieve_side = compute_all_Skn(fam, k_max=k_max, max_events=max_events)
    dec = decompose(fam)
    atom_side = moments_from_decomposition(dec, k_max=k_max)
    return [
        MomentIdentityRow(k=k, sieve_value=sieve_side[k], atom_value=atom_side[k])
        for k in range(1, k_max + 1)
    ]
