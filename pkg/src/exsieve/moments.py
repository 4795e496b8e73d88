"""Binomial moments, alternating-series brackets, and convergence checks.

For a Z+-valued random variable X with Pr(X = j) = T_j, the binomial
moments are S_j = E[C(X, j)] = sum_i C(i, j) T_i.  Truncating the
alternating series

    sum_j (-1)^j C(j+k-1, k-1) S_{j+k}      (tail:  Pr(X >= k))
    sum_j (-1)^j C(j+k-1, k-1) S_{j+k-1}    (point: Pr(X = k-1))

at odd depth 2d+1 gives a lower bound and at even depth 2r an upper
bound; the matched-depth bracket has width C(2d+k, k-1) * S_{2d+k+1}
(tail) or C(2d+k, k-1) * S_{2d+k} (point).  The full series equals the
probability exactly if and only if l^(k-1) S_l -> 0, so the infinite
forms are only evaluated under a tail certificate strong enough to force
that limit: the checker never guesses a limit from finitely many terms.

The same identities hold in the event-family vocabulary through the
occupancy variable X = number of events containing the sample point
(Pr(X >= k) is then the union of all k-wise intersections); only the pmf
form is exposed here, the family side lives in the sieve module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadK,
    InsufficientPrefix,
    NoCertificate,
    WidthNotAchievable,
)
from .numerics import IntervalScalar, Rat, Scalar, binom, scalar_bounds
from .space import (
    EXPLICIT,
    GEOMETRIC,
    POISSON,
    BinomialMomentSeq,
    TailCertificate,
    ZPlusPmf,
)

TAIL = "tail"
POINT = "point"

CERTIFIED_CONVERGES = "certified_converges"
CERTIFIED_DIVERGES = "certified_diverges"
INCONCLUSIVE = "inconclusive"

DEFAULT_MAX_TERMS = 10**6


@dataclass(frozen=True)
class Bracket:
    """Certified enclosure [lower, upper] from a Bonferroni truncation.

    Depths: the lower bound sums terms j = 0..2d+1, the upper bound
    j = 0..2r.  In interval mode the rigorous enclosure is
    [lower.lo, upper.hi].
    """

    k: int
    d: int
    r: int
    target: str
    lower: Scalar
    upper: Scalar

    def enclosure(self) -> tuple[Rat, Rat]:
        return scalar_bounds(self.lower)[0], scalar_bounds(self.upper)[1]

    @property
    def width(self) -> Rat:
        lo, hi = self.enclosure()
        return hi - lo

    def contains(self, x) -> bool:
        lo, hi = self.enclosure()
        if isinstance(x, IntervalScalar):
            return lo <= x.lo and x.hi <= hi
        return lo <= x <= hi


@dataclass(frozen=True)
class ConvergenceVerdict:
    """Outcome of a convergence check; `witness` says why, in one line."""

    k: int
    status: str
    witness: str

    @property
    def converges(self) -> bool:
        return self.status == CERTIFIED_CONVERGES

    @property
    def diverges(self) -> bool:
        return self.status == CERTIFIED_DIVERGES


@dataclass(frozen=True)
class CascadeReport:
    """Finiteness of S_k for every k below a finite S_l."""

    l: int
    entries: tuple[tuple[int, bool, Scalar], ...]  # (k, finite, value)

    @property
    def all_finite(self) -> bool:
        return all(f for _, f, _ in self.entries)


def sk_from_pmf(pmf: ZPlusPmf, k_max: int) -> BinomialMomentSeq:
    """Binomial moments S_0..S_k_max of a pmf, with its tail certificate.

    Explicit and geometric pmfs give exact rationals; poisson values are
    exact too (lambda^k / k!) but are carried as degenerate intervals so
    downstream computations stay in enclosure mode.
    """
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    if pmf.kind == EXPLICIT:
        values = tuple(_explicit_moment(pmf.weights, j) for j in range(k_max + 1))
        tail = TailCertificate(J=pmf.support_bound, C=Fraction(0), rho=Fraction(0), exact=True)
    elif pmf.kind == GEOMETRIC:
        rho = pmf.param / (1 - pmf.param)
        values = tuple(rho**j for j in range(k_max + 1))
        tail = TailCertificate(J=0, C=Fraction(1), rho=rho, exact=True)
    else:
        lam = pmf.param
        vals = []
        term = Fraction(1)
        for j in range(k_max + 1):
            vals.append(IntervalScalar.point(term, pmf.precision_bits))
            term = term * lam / (j + 1)
        values = tuple(vals)
        if lam == 0:
            tail = TailCertificate(J=0, C=Fraction(0), rho=Fraction(0), exact=True)
        else:
            # ratio test: for l > J, S_l <= S_J * (lambda/(J+1))^(l-J)
            J = max(k_max, int(lam) + 1)
            rho = lam / (J + 1)
            C = Fraction((J + 1) ** J, _factorial(J))
            tail = TailCertificate(J=J, C=C, rho=rho)
    return BinomialMomentSeq(values=values, tail=tail, source=pmf)


def _explicit_moment(weights, j: int) -> Rat:
    return sum((binom(i, j) * w for i, w in enumerate(weights) if i >= j), start=Fraction(0))


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _term_index(target: str, k: int, j: int) -> int:
    if target == TAIL:
        return j + k
    if target == POINT:
        return j + k - 1
    raise ValueError(f"target must be 'tail' or 'point', got {target!r}")


def bracket(S: BinomialMomentSeq, k: int, d: int, r: int, target: str) -> Bracket:
    """Bonferroni bracket for Pr(X >= k) (tail) or Pr(X = k-1) (point).

    lower = sum_{j=0}^{2d+1} (-1)^j C(j+k-1, k-1) S_idx(j)
    upper = sum_{j=0}^{2r}   (-1)^j C(j+k-1, k-1) S_idx(j)

    with idx(j) = j+k for tail and j+k-1 for point.  Uses only the stored
    prefix; raises InsufficientPrefix when it is too short.
    """
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")
    if d < 0 or r < 0:
        raise ValueError("depths d and r must be nonnegative")
    needed = _term_index(target, k, max(2 * d + 1, 2 * r))
    if needed > S.k_max:
        raise InsufficientPrefix(
            f"bracket needs S_{needed} but the sequence stores up to S_{S.k_max}"
        )

    def partial(last_j: int) -> Scalar:
        total: Scalar = Fraction(0)
        for j in range(last_j + 1):
            term = binom(j + k - 1, k - 1) * S.values[_term_index(target, k, j)]
            total = total + term if j % 2 == 0 else total - term
        return total

    return Bracket(k=k, d=d, r=r, target=target, lower=partial(2 * d + 1), upper=partial(2 * r))


def _extendable_value(seq: BinomialMomentSeq, idx: int) -> tuple[BinomialMomentSeq, Scalar]:
    """S_idx from the prefix, the exact certificate, or a source rebuild."""
    if idx <= seq.k_max:
        return seq, seq.values[idx]
    tail = seq.tail
    if tail is not None and tail.exact and idx > tail.J:
        return seq, tail.value(idx)
    if seq.source is not None:
        rebuilt = sk_from_pmf(seq.source, max(idx, 2 * seq.k_max + 8))
        return rebuilt, rebuilt.values[idx]
    raise InsufficientPrefix(
        f"S_{idx} is beyond the stored prefix and the sequence has no source pmf"
    )


def evaluate_series(
    S: BinomialMomentSeq,
    k: int,
    target: str,
    eps,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> Bracket:
    """Enclosure of Pr(X >= k) (tail) or Pr(X = k-1) (point), width <= eps.

    Refuses without a tail certificate certifying l^(k-1) S_l -> 0: with
    all S_k finite the series can still oscillate without converging, and
    a best-effort number would misrepresent it.  Grows the matched depth
    d until the bracket width C(2d+k, k-1) * S_(next) drops to eps; the
    certificate guarantees this terminates.
    """
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")
    _term_index(target, k, 0)  # validates target
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    verdict = check_exact_condition(S, k)
    if not verdict.converges:
        raise NoCertificate(
            f"series evaluation at level k={k} requires a certificate forcing "
            f"l^(k-1) S_l -> 0; check returned {verdict.status}: {verdict.witness}"
        )

    seq = S

    def term(j: int) -> Scalar:
        nonlocal seq
        seq, value = _extendable_value(seq, _term_index(target, k, j))
        return binom(j + k - 1, k - 1) * value

    upper = term(0)
    lower = upper - term(1)
    d = 0
    while True:
        lo = scalar_bounds(lower)[0]
        hi = scalar_bounds(upper)[1]
        if hi - lo <= eps:
            return Bracket(k=k, d=d, r=d, target=target, lower=lower, upper=upper)
        d += 1
        if _term_index(target, k, 2 * d + 1) > max_terms:
            raise WidthNotAchievable(
                f"bracket width still above eps after {max_terms} series terms"
            )
        upper = lower + term(2 * d)
        lower = upper - term(2 * d + 1)


def check_exact_condition(S: BinomialMomentSeq, k: int) -> ConvergenceVerdict:
    """Decide l^(k-1) S_l -> 0 from the attached tail certificate.

    Certified forms: rho < 1 (any alpha) converges at every level;
    rho = 1 with alpha <= -k converges at level k; C = 0 means the tail
    vanishes.  Divergence needs an exact certificate (a closed form, not
    just an upper bound).  Anything else is inconclusive: finitely many
    terms never decide a limit, so the empirical trend is reported as
    diagnostics only.
    """
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")
    cert = S.tail
    if cert is None:
        return ConvergenceVerdict(k, INCONCLUSIVE, _empirical_trend(S, k))
    if cert.C == 0:
        return ConvergenceVerdict(
            k, CERTIFIED_CONVERGES, f"certificate gives S_l = 0 for l > {cert.J}"
        )
    if cert.rho < 1:
        return ConvergenceVerdict(
            k,
            CERTIFIED_CONVERGES,
            f"certificate S_l <= {cert.C} * ({cert.rho})^l * l^{cert.alpha} has "
            f"rho < 1, so l^{k - 1} S_l -> 0",
        )
    if cert.rho == 1 and cert.alpha <= -k:
        return ConvergenceVerdict(
            k,
            CERTIFIED_CONVERGES,
            f"certificate gives l^{k - 1} S_l <= {cert.C} * l^{k - 1 + cert.alpha} -> 0",
        )
    if cert.exact:
        if cert.rho > 1:
            return ConvergenceVerdict(
                k,
                CERTIFIED_DIVERGES,
                f"closed form S_l = {cert.C} * ({cert.rho})^l * l^{cert.alpha} "
                f"grows without bound",
            )
        if cert.rho == 1 and cert.alpha >= 1 - k:
            return ConvergenceVerdict(
                k,
                CERTIFIED_DIVERGES,
                f"closed form gives l^{k - 1} S_l = {cert.C} * l^{k - 1 + cert.alpha} "
                f">= {cert.C} > 0 for all l",
            )
    return ConvergenceVerdict(k, INCONCLUSIVE, _empirical_trend(S, k))


def check_takacs(S: BinomialMomentSeq) -> ConvergenceVerdict:
    """Exponential-decay check: limsup S_k^(1/k) < 1.

    Strictly stronger than the exact level-k condition; a certificate
    with rho < 1 (and alpha <= 0, or exact) settles it.
    """
    cert = S.tail
    if cert is not None:
        if cert.C == 0:
            return ConvergenceVerdict(
                1, CERTIFIED_CONVERGES, f"S_l = 0 for l > {cert.J}, roots are eventually 0"
            )
        if cert.exact:
            if cert.rho < 1:
                return ConvergenceVerdict(
                    1,
                    CERTIFIED_CONVERGES,
                    f"closed form gives limsup S_l^(1/l) = {cert.rho} < 1",
                )
            return ConvergenceVerdict(
                1,
                CERTIFIED_DIVERGES,
                f"closed form gives limsup S_l^(1/l) = {cert.rho} >= 1",
            )
        if cert.rho < 1 and cert.alpha <= 0:
            return ConvergenceVerdict(
                1,
                CERTIFIED_CONVERGES,
                f"certificate bounds limsup S_l^(1/l) by rho = {cert.rho} < 1",
            )
    roots = [
        float(scalar_bounds(S.values[j])[1]) ** (1.0 / j)
        for j in range(1, S.k_max + 1)
        if scalar_bounds(S.values[j])[1] > 0
    ]
    shown = ", ".join(f"{x:.6g}" for x in roots[-5:]) or "none"
    return ConvergenceVerdict(
        1, INCONCLUSIVE, f"no deciding certificate; prefix roots S_l^(1/l) (not rigorous): {shown}"
    )


def finiteness_cascade(S: BinomialMomentSeq, l: int) -> CascadeReport:
    """Confirm S_k finite for all k < l, with values, given S_l finite.

    Finiteness of a higher moment dominates every lower one by term
    comparison, so for pmf-backed sequences this is automatic; the
    report makes the cascade explicit.
    """
    if l < 1:
        raise BadK(f"l must be >= 1, got {l}")
    seq = S
    seq, _ = _extendable_value(seq, l)  # S_l itself must be obtainable
    entries = []
    for k in range(1, l):
        seq, value = _extendable_value(seq, k)
        entries.append((k, True, value))
    return CascadeReport(l=l, entries=tuple(entries))


def _empirical_trend(S: BinomialMomentSeq, k: int) -> str:
    points = [
        float(l ** (k - 1)) * float(scalar_bounds(S.values[l])[1])
        for l in range(1, S.k_max + 1)
    ]
    shown = ", ".join(f"{x:.6g}" for x in points[-5:]) or "none"
    return (
        f"no certificate decides level k={k}; trailing l^{k - 1} S_l over the "
        f"stored prefix (not rigorous): {shown}"
    )
