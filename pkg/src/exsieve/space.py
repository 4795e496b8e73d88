"""Finite probability spaces, event families, and Z+-valued pmfs.

A :class:`FiniteSpace` is an ordered list of weighted sample atoms whose
weights sum to exactly 1.  An :class:`EventFamily` stores each event as a
bitset over atom indices.  A :class:`ZPlusPmf` is a distribution on the
nonnegative integers: explicit finite support, geometric, or Poisson.  The
first two are fully rational; Poisson point weights involve e^(-lambda)
and are returned as interval enclosures.

:class:`BinomialMomentSeq` holds a computed prefix S_0..S_J of binomial
moments together with an optional :class:`TailCertificate`, the
machine-checkable stand-in for statements about the limit of the sequence
beyond the stored prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import NegativeWeight, NotNormalized, ZeroMass
from .numerics import (
    DEFAULT_PRECISION_BITS,
    IntervalScalar,
    Rat,
    Scalar,
    interval_exp,
)


@dataclass(frozen=True)
class FiniteSpace:
    """Weighted finite sample space; weights are exact and sum to 1."""

    labels: tuple[str, ...]
    weights: tuple[Rat, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.weights):
            raise ValueError("labels and weights must have equal length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("atom labels must be unique")
        for w in self.weights:
            if w < 0:
                raise NegativeWeight(f"atom weight {w} is negative")
        total = sum(self.weights, start=Fraction(0))
        if total != 1:
            raise NotNormalized(f"atom weights sum to {total}, expected 1")

    @property
    def natoms(self) -> int:
        return len(self.weights)

    @property
    def atoms(self) -> tuple[tuple[str, Rat], ...]:
        return tuple(zip(self.labels, self.weights))

    def measure(self, mask: int) -> Rat:
        """Exact probability of the atom set encoded by `mask`."""
        total = Fraction(0)
        m = mask
        while m:
            low = m & -m
            total += self.weights[low.bit_length() - 1]
            m ^= low
        return total


def make_space(weights: Sequence[Rat | int | str], labels: Sequence[str] | None = None) -> FiniteSpace:
    """Build a finite space from weights, auto-labeling atoms a0, a1, ..."""
    ws = tuple(Fraction(w) for w in weights)
    if labels is None:
        labels = tuple(f"a{i}" for i in range(len(ws)))
    return FiniteSpace(tuple(labels), ws)


@dataclass(frozen=True)
class EventFamily:
    """Events A_1..A_n over a finite space, each stored as an atom bitset.

    Events may repeat and may be empty; indices into the family are
    1-based in reports, matching the usual A_1..A_n numbering.
    """

    space: FiniteSpace
    masks: tuple[int, ...]

    def __post_init__(self):
        limit = 1 << self.space.natoms
        for j, m in enumerate(self.masks):
            if m < 0 or m >= limit:
                raise ValueError(f"event {j + 1} references atoms outside the space")

    @classmethod
    def from_indices(cls, space: FiniteSpace, events: Sequence[Sequence[int]]) -> "EventFamily":
        masks = []
        for j, ev in enumerate(events):
            m = 0
            for i in ev:
                if not 0 <= i < space.natoms:
                    raise ValueError(f"event {j + 1} has atom index {i} out of range")
                m |= 1 << i
            masks.append(m)
        return cls(space, tuple(masks))

    @property
    def n(self) -> int:
        return len(self.masks)

    @property
    def events(self) -> tuple[tuple[int, ...], ...]:
        """Events as sorted atom-index tuples (0-based atoms)."""
        out = []
        for m in self.masks:
            ev = []
            while m:
                low = m & -m
                ev.append(low.bit_length() - 1)
                m ^= low
            out.append(tuple(ev))
        return tuple(out)


EXPLICIT = "explicit"
GEOMETRIC = "geometric"
POISSON = "poisson"


@dataclass(frozen=True)
class ZPlusPmf:
    """Distribution of a Z+-valued random variable X, Pr(X = j) = T_j.

    kinds:
      explicit  -- T_0..T_m given as exact rationals summing to 1
      geometric -- T_j = (1-p) p^j, 0 <= p < 1, fully rational
      poisson   -- T_j = e^(-lambda) lambda^j / j!, rational lambda >= 0;
                   point weights are interval enclosures
    """

    kind: str
    weights: tuple[Rat, ...] | None = None
    param: Rat | None = None
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        if self.kind == EXPLICIT:
            if not self.weights:
                raise ValueError("explicit pmf requires weights")
            for w in self.weights:
                if w < 0:
                    raise NegativeWeight(f"pmf weight {w} is negative")
            total = sum(self.weights, start=Fraction(0))
            if total != 1:
                raise NotNormalized(f"pmf weights sum to {total}, expected 1")
        elif self.kind == GEOMETRIC:
            if self.param is None or not 0 <= self.param < 1:
                raise ValueError("geometric pmf requires 0 <= p < 1")
        elif self.kind == POISSON:
            if self.param is None or self.param < 0:
                raise ValueError("poisson pmf requires lambda >= 0")
        else:
            raise ValueError(f"unknown pmf kind: {self.kind!r}")

    @classmethod
    def explicit(
        cls, weights: Sequence[Rat | int | str], precision_bits: int = DEFAULT_PRECISION_BITS
    ) -> "ZPlusPmf":
        return cls(
            EXPLICIT,
            weights=tuple(Fraction(w) for w in weights),
            precision_bits=precision_bits,
        )

    @classmethod
    def geometric(cls, p, precision_bits: int = DEFAULT_PRECISION_BITS) -> "ZPlusPmf":
        return cls(GEOMETRIC, param=Fraction(p), precision_bits=precision_bits)

    @classmethod
    def poisson(cls, lam, precision_bits: int = DEFAULT_PRECISION_BITS) -> "ZPlusPmf":
        return cls(POISSON, param=Fraction(lam), precision_bits=precision_bits)

    @property
    def support_bound(self) -> int | None:
        """Largest j with T_j > 0 for finite-support pmfs, else None."""
        if self.kind == EXPLICIT:
            last = 0
            for j, w in enumerate(self.weights):
                if w > 0:
                    last = j
            return last
        if self.kind == GEOMETRIC and self.param == 0:
            return 0
        if self.kind == POISSON and self.param == 0:
            return 0
        return None

    @property
    def is_rational(self) -> bool:
        """True when every T_j is an exact rational."""
        return self.kind != POISSON


def pmf_weight(pmf: ZPlusPmf, j: int) -> Scalar:
    """T_j: exact for explicit/geometric kinds, certified enclosure for poisson."""
    if j < 0:
        raise ValueError("index must be nonnegative")
    if pmf.kind == EXPLICIT:
        return pmf.weights[j] if j < len(pmf.weights) else Fraction(0)
    if pmf.kind == GEOMETRIC:
        p = pmf.param
        return (1 - p) * p**j
    lam = pmf.param
    factor = Fraction(lam**j, _factorial(j))
    return interval_exp(IntervalScalar.point(-lam, pmf.precision_bits)) * factor


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def first_support_index(pmf: ZPlusPmf) -> int:
    """n0: the first index with Pr(X <= n0) > 0."""
    if pmf.kind == EXPLICIT:
        for j, w in enumerate(pmf.weights):
            if w > 0:
                return j
        raise ZeroMass("pmf has no mass")  # unreachable: weights sum to 1
    return 0  # geometric and poisson put positive mass at 0


def truncate_conditional(pmf: ZPlusPmf, n: int) -> ZPlusPmf:
    """Distribution of X conditioned on X <= n, as an explicit pmf.

    Weights are Pr(X = k) / Pr(X <= n) for k = 0..n and are exactly
    rational for every kind: the e^(-lambda) factor cancels for poisson.
    """
    if n < 0:
        raise ValueError("truncation point must be nonnegative")
    if pmf.kind == EXPLICIT:
        raw = [pmf.weights[k] if k < len(pmf.weights) else Fraction(0) for k in range(n + 1)]
    elif pmf.kind == GEOMETRIC:
        p = pmf.param
        raw = [(1 - p) * p**k for k in range(n + 1)]
    else:
        lam = pmf.param
        term = Fraction(1)
        raw = []
        for k in range(n + 1):
            raw.append(term)  # lambda^k / k!, the e^(-lambda) factor cancels
            term = term * lam / (k + 1)
    total = sum(raw, start=Fraction(0))
    if total == 0:
        raise ZeroMass(f"Pr(X <= {n}) = 0; truncation needs n >= {first_support_index(pmf)}")
    return ZPlusPmf.explicit([w / total for w in raw])


@dataclass(frozen=True)
class TailCertificate:
    """Closed-form tail domination: S_l <= C * rho^l * l^alpha for all l > J.

    With `exact` set, equality holds, which additionally certifies lower
    bounds (the witness needed to certify divergence for closed-form
    families).  A certificate with rho < 1 forces l^(k-1) S_l -> 0 for
    every k.
    """

    J: int
    C: Rat
    rho: Rat
    alpha: int = 0
    exact: bool = False

    def __post_init__(self):
        if self.C < 0 or self.rho < 0:
            raise ValueError("certificate constants must be nonnegative")
        if self.J < 0:
            raise ValueError("certificate cutoff must be nonnegative")

    def bound(self, l: int) -> Rat:
        """Upper bound for S_l, valid for l > J."""
        if l <= self.J:
            raise ValueError(f"certificate only covers l > {self.J}")
        return self.C * self.rho**l * Fraction(l) ** self.alpha

    def value(self, l: int) -> Rat:
        """Exact S_l for exact certificates, valid for l > J."""
        if not self.exact:
            raise ValueError("certificate is an upper bound only")
        return self.bound(l)


@dataclass(frozen=True)
class BinomialMomentSeq:
    """Computed prefix S_0..S_J of binomial moments, plus optional tail data.

    `source` keeps the generating pmf, if any, so longer prefixes can be
    rebuilt on demand; the sequence itself is immutable.
    """

    values: tuple[Scalar, ...]
    tail: Optional[TailCertificate] = None
    source: Optional[ZPlusPmf] = None

    def __post_init__(self):
        if not self.values:
            raise ValueError("moment sequence must contain at least S_0")
        for j, v in enumerate(self.values):
            lo = v.lo if isinstance(v, IntervalScalar) else v
            if lo < 0:
                raise ValueError(f"S_{j} is negative")

    @property
    def k_max(self) -> int:
        return len(self.values) - 1

    @property
    def interval_mode(self) -> bool:
        return any(isinstance(v, IntervalScalar) for v in self.values)

    def __getitem__(self, k: int) -> Scalar:
        return self.values[k]
