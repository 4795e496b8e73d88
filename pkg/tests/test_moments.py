"""Binomial moments of pmfs, series brackets, and convergence checks."""

from fractions import Fraction

import pytest

from exsieve.errors import (
    BadK,
    InsufficientPrefix,
    NoCertificate,
    WidthNotAchievable,
)
from exsieve.gen import random_explicit_pmf
from exsieve.moments import (
    CERTIFIED_CONVERGES,
    CERTIFIED_DIVERGES,
    INCONCLUSIVE,
    POINT,
    TAIL,
    Bracket,
    bracket,
    check_exact_condition,
    check_takacs,
    evaluate_series,
    finiteness_cascade,
    sk_from_pmf,
)
from exsieve.numerics import IntervalScalar, binom, scalar_bounds
from exsieve.space import BinomialMomentSeq, TailCertificate, ZPlusPmf
from .oracles import (
    exp_neg1_bounds,
    explicit_point,
    explicit_sk,
    explicit_tail,
    geometric_sk_bounds,
    poisson_partial_identity,
)

F = Fraction

HALF_SPLIT = ZPlusPmf.explicit([F(1, 2), 0, 0, F(1, 2)])


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


class TestSkFromPmf:
    def test_explicit_example(self):
        seq = sk_from_pmf(HALF_SPLIT, k_max=5)
        assert seq.values == (F(1), F(3, 2), F(3, 2), F(1, 2), F(0), F(0))
        assert seq.tail is not None and seq.tail.exact
        assert seq.tail.C == 0 and seq.tail.J == 3
        assert seq.source is HALF_SPLIT

    def test_explicit_matches_direct_sums(self):
        for seed in range(40):
            pmf = random_explicit_pmf(seed)
            seq = sk_from_pmf(pmf, k_max=len(pmf.weights) + 2)
            for j, v in enumerate(seq.values):
                assert v == explicit_sk(pmf.weights, j)

    def test_geometric_closed_form(self):
        seq = sk_from_pmf(ZPlusPmf.geometric(F(2, 5)), k_max=30)
        for j in range(31):
            assert seq.values[j] == F(2, 3) ** j
        assert seq.tail == TailCertificate(J=0, C=F(1), rho=F(2, 3), exact=True)

    def test_geometric_against_partial_sum_oracle(self):
        for p in (F(2, 5), F(3, 5), F(1, 7)):
            seq = sk_from_pmf(ZPlusPmf.geometric(p), k_max=12)
            for k in range(13):
                lo, hi = geometric_sk_bounds(p, k)
                assert lo <= seq.values[k] <= hi

    def test_poisson_values_are_exact_rational_points(self):
        seq = sk_from_pmf(ZPlusPmf.poisson(1), k_max=8)
        assert seq.interval_mode
        for j in range(9):
            v = seq.values[j]
            assert isinstance(v, IntervalScalar)
            assert v.lo == v.hi == F(1, _factorial(j))
        cert = seq.tail
        assert cert is not None and not cert.exact and cert.rho < 1

    def test_poisson_closed_form_identity(self):
        for lam in (F(1), F(3), F(5, 2)):
            seq = sk_from_pmf(ZPlusPmf.poisson(lam), k_max=6)
            for k in range(7):
                lhs, rhs = poisson_partial_identity(lam, k, J=40)
                assert lhs == rhs  # oracle self-check
                assert scalar_bounds(seq.values[k])[0] == F(lam**k, _factorial(k))

    def test_poisson_zero_rate_terminates(self):
        seq = sk_from_pmf(ZPlusPmf.poisson(0), k_max=3)
        assert seq.tail.C == 0 and seq.tail.exact

    def test_negative_k_max_rejected(self):
        with pytest.raises(ValueError):
            sk_from_pmf(HALF_SPLIT, k_max=-1)


class TestBracket:
    def test_tail_example(self):
        seq = sk_from_pmf(HALF_SPLIT, k_max=5)
        b = bracket(seq, k=1, d=0, r=0, target=TAIL)
        assert (b.lower, b.upper) == (F(0), F(3, 2))
        assert b.width == F(3, 2)
        assert b.contains(F(1, 2))

    def test_point_example(self):
        seq = sk_from_pmf(HALF_SPLIT, k_max=5)
        b = bracket(seq, k=1, d=1, r=1, target=POINT)
        assert (b.lower, b.upper) == (F(1, 2), F(1))
        assert b.contains(F(1, 2))  # Pr(X = 0)

    def test_raw_sums_may_loosen_with_depth(self):
        # point mass at 6: S_j = C(6, j), so partial sums oscillate and a
        # deeper raw truncation can be the looser one; that is by design
        seq = sk_from_pmf(ZPlusPmf.explicit([0, 0, 0, 0, 0, 0, 1]), k_max=8)
        shallow = bracket(seq, k=1, d=0, r=0, target=TAIL)
        deeper = bracket(seq, k=1, d=0, r=1, target=TAIL)
        assert shallow.upper == 6
        assert deeper.upper == 6 - 15 + 20
        assert deeper.upper > shallow.upper
        assert shallow.contains(1) and deeper.contains(1)

    def test_matched_depth_width_law_tail(self):
        for seed in range(40):
            pmf = random_explicit_pmf(seed)
            m = pmf.support_bound
            seq = sk_from_pmf(pmf, k_max=m + 10)
            for k in range(1, m + 2):
                for d in range(4):
                    b = bracket(seq, k=k, d=d, r=d, target=TAIL)
                    assert b.upper - b.lower == binom(2 * d + k, k - 1) * seq.values[2 * d + k + 1]

    def test_matched_depth_width_law_point(self):
        seq = sk_from_pmf(HALF_SPLIT, k_max=9)
        for k in range(1, 5):
            for d in range(3):
                b = bracket(seq, k=k, d=d, r=d, target=POINT)
                assert b.upper - b.lower == binom(2 * d + k, k - 1) * seq.values[2 * d + k]

    def test_contains_truth_on_explicit_corpus(self):
        for seed in range(40):
            pmf = random_explicit_pmf(seed)
            m = pmf.support_bound
            seq = sk_from_pmf(pmf, k_max=m + 8)
            for k in range(1, m + 2):
                tail_truth = explicit_tail(pmf.weights, k)
                point_truth = explicit_point(pmf.weights, k - 1)
                for d in range(3):
                    for r in range(3):
                        bt = bracket(seq, k=k, d=d, r=r, target=TAIL)
                        assert bt.lower <= tail_truth <= bt.upper
                        bp = bracket(seq, k=k, d=d, r=r, target=POINT)
                        assert bp.lower <= point_truth <= bp.upper

    def test_contains_truth_for_geometric(self):
        p = F(2, 5)
        seq = sk_from_pmf(ZPlusPmf.geometric(p), k_max=20)
        for k in range(1, 6):
            for depth in range(4):
                b = bracket(seq, k=k, d=depth, r=depth, target=TAIL)
                assert b.contains(p**k)  # Pr(X >= k) = p^k
                bp = bracket(seq, k=k, d=depth, r=depth, target=POINT)
                assert bp.contains((1 - p) * p ** (k - 1))

    def test_terminating_series_recovers_probabilities_exactly(self):
        for seed in range(40):
            pmf = random_explicit_pmf(seed)
            m = pmf.support_bound
            depth = m + 2
            seq = sk_from_pmf(pmf, k_max=2 * depth + m + 3)
            for k in range(1, m + 2):
                bt = bracket(seq, k=k, d=depth, r=depth, target=TAIL)
                assert bt.lower == bt.upper == explicit_tail(pmf.weights, k)
                bp = bracket(seq, k=k, d=depth, r=depth, target=POINT)
                assert bp.lower == bp.upper == explicit_point(pmf.weights, k - 1)

    def test_insufficient_prefix(self):
        seq = sk_from_pmf(HALF_SPLIT, k_max=2)
        with pytest.raises(InsufficientPrefix):
            bracket(seq, k=1, d=1, r=0, target=TAIL)

    def test_bad_inputs(self):
        seq = sk_from_pmf(HALF_SPLIT, k_max=5)
        with pytest.raises(BadK):
            bracket(seq, k=0, d=0, r=0, target=TAIL)
        with pytest.raises(ValueError):
            bracket(seq, k=1, d=-1, r=0, target=TAIL)
        with pytest.raises(ValueError):
            bracket(seq, k=1, d=0, r=0, target="mass")

    def test_interval_mode_enclosure(self):
        seq = sk_from_pmf(ZPlusPmf.poisson(1), k_max=6)
        b = bracket(seq, k=1, d=1, r=1, target=TAIL)
        lo, hi = b.enclosure()
        assert lo <= 1 - F(exp_neg1_bounds()[0]) <= hi or lo <= 1 - F(exp_neg1_bounds()[1]) <= hi
        assert b.width == hi - lo


class TestEvaluateSeries:
    def test_geometric_tail(self):
        seq = sk_from_pmf(ZPlusPmf.geometric(F(2, 5)), k_max=8)
        b = evaluate_series(seq, k=1, target=TAIL, eps=F(1, 10**9))
        lo, hi = b.enclosure()
        assert lo <= F(2, 5) <= hi
        assert hi - lo <= F(1, 10**9)

    def test_geometric_deeper_levels(self):
        seq = sk_from_pmf(ZPlusPmf.geometric(F(2, 5)), k_max=8)
        b2 = evaluate_series(seq, k=2, target=TAIL, eps=F(1, 10**12))
        assert b2.contains(F(4, 25))
        bp = evaluate_series(seq, k=1, target=POINT, eps=F(1, 10**12))
        assert bp.contains(F(3, 5))

    def test_poisson_point_encloses_interval_exp_oracle(self):
        seq = sk_from_pmf(ZPlusPmf.poisson(1), k_max=6)
        b = evaluate_series(seq, k=1, target=POINT, eps=F(1, 10**6))
        lo, hi = b.enclosure()
        o_lo, o_hi = exp_neg1_bounds()
        assert lo <= o_lo <= o_hi <= hi
        assert hi - lo <= F(1, 10**6)

    def test_poisson_tail(self):
        seq = sk_from_pmf(ZPlusPmf.poisson(1), k_max=6)
        b = evaluate_series(seq, k=1, target=TAIL, eps=F(1, 10**6))
        o_lo, o_hi = exp_neg1_bounds()
        lo, hi = b.enclosure()
        assert lo <= 1 - o_hi <= 1 - o_lo <= hi

    def test_explicit_terminates_exactly(self):
        seq = sk_from_pmf(HALF_SPLIT, k_max=5)
        b = evaluate_series(seq, k=1, target=TAIL, eps=F(1, 10**30))
        lo, hi = b.enclosure()
        assert lo == hi == F(1, 2)

    def test_extends_prefix_through_exact_certificate_without_source(self):
        values = tuple(F(2, 3) ** j for j in range(3))
        seq = BinomialMomentSeq(
            values=values,
            tail=TailCertificate(J=0, C=F(1), rho=F(2, 3), exact=True),
        )
        b = evaluate_series(seq, k=1, target=TAIL, eps=F(1, 10**9))
        assert b.contains(F(2, 5))

    def test_extends_prefix_through_source_rebuild(self):
        seq = sk_from_pmf(ZPlusPmf.poisson(1), k_max=2)
        b = evaluate_series(seq, k=1, target=POINT, eps=F(1, 10**6))
        o_lo, o_hi = exp_neg1_bounds()
        lo, hi = b.enclosure()
        assert lo <= o_lo <= o_hi <= hi

    def test_refuses_without_certificate(self):
        seq = BinomialMomentSeq(values=(F(1), F(1, 2), F(1, 4)))
        with pytest.raises(NoCertificate):
            evaluate_series(seq, k=1, target=TAIL, eps=F(1, 100))

    def test_refuses_certified_divergent_input(self):
        seq = sk_from_pmf(ZPlusPmf.geometric(F(3, 5)), k_max=8)
        with pytest.raises(NoCertificate):
            evaluate_series(seq, k=1, target=TAIL, eps=F(1, 100))

    def test_width_not_achievable_under_term_budget(self):
        seq = sk_from_pmf(ZPlusPmf.geometric(F(2, 5)), k_max=30)
        with pytest.raises(WidthNotAchievable):
            evaluate_series(seq, k=1, target=TAIL, eps=F(1, 10**12), max_terms=5)

    def test_insufficient_prefix_without_source_or_exact_tail(self):
        seq = BinomialMomentSeq(
            values=(F(1), F(1, 2), F(1, 4)),
            tail=TailCertificate(J=2, C=F(1), rho=F(1, 2), exact=False),
        )
        coarse = evaluate_series(seq, k=1, target=TAIL, eps=F(1, 3))
        assert (coarse.lower, coarse.upper) == (F(1, 4), F(1, 2))
        with pytest.raises(InsufficientPrefix):
            evaluate_series(seq, k=1, target=TAIL, eps=F(1, 100))

    def test_bad_inputs(self):
        seq = sk_from_pmf(HALF_SPLIT, k_max=5)
        with pytest.raises(BadK):
            evaluate_series(seq, k=0, target=TAIL, eps=F(1, 10))
        with pytest.raises(ValueError):
            evaluate_series(seq, k=1, target="middle", eps=F(1, 10))
        with pytest.raises(ValueError):
            evaluate_series(seq, k=1, target=TAIL, eps=0)


class TestCheckExactCondition:
    def test_explicit_converges_at_every_level(self):
        seq = sk_from_pmf(HALF_SPLIT, k_max=4)
        for k in range(1, 8):
            verdict = check_exact_condition(seq, k)
            assert verdict.status == CERTIFIED_CONVERGES
            assert verdict.converges and not verdict.diverges

    def test_geometric_below_half_converges(self):
        seq = sk_from_pmf(ZPlusPmf.geometric(F(2, 5)), k_max=6)
        for k in range(1, 11):
            assert check_exact_condition(seq, k).converges

    def test_geometric_above_half_diverges(self):
        seq = sk_from_pmf(ZPlusPmf.geometric(F(3, 5)), k_max=6)
        for k in range(1, 6):
            verdict = check_exact_condition(seq, k)
            assert verdict.status == CERTIFIED_DIVERGES

    def test_half_boundary_diverges(self):
        # S_l = 1 for all l; l^(k-1) S_l never reaches 0
        seq = sk_from_pmf(ZPlusPmf.geometric(F(1, 2)), k_max=6)
        assert check_exact_condition(seq, 1).diverges

    def test_poisson_converges(self):
        seq = sk_from_pmf(ZPlusPmf.poisson(3), k_max=6)
        for k in range(1, 8):
            assert check_exact_condition(seq, k).converges

    def test_no_certificate_is_inconclusive_with_diagnostics(self):
        seq = BinomialMomentSeq(values=(F(1), F(1, 2), F(1, 4)))
        verdict = check_exact_condition(seq, 2)
        assert verdict.status == INCONCLUSIVE
        assert "not rigorous" in verdict.witness

    def test_polynomial_boundary_certificate(self):
        # exact S_l = l^(-3) for l > 0: converges up to k = 3, diverges after
        seq = BinomialMomentSeq(
            values=(F(1), F(1), F(1, 8), F(1, 27)),
            tail=TailCertificate(J=0, C=F(1), rho=F(1), alpha=-3, exact=True),
        )
        assert check_exact_condition(seq, 3).converges
        assert check_exact_condition(seq, 4).diverges
        assert check_exact_condition(seq, 7).diverges

    def test_polynomial_bound_only_certificate(self):
        # upper bound S_l <= l^(-3): converges up to k = 3, then unknown
        seq = BinomialMomentSeq(
            values=(F(1), F(1), F(1, 8), F(1, 27)),
            tail=TailCertificate(J=0, C=F(1), rho=F(1), alpha=-3, exact=False),
        )
        assert check_exact_condition(seq, 3).converges
        assert check_exact_condition(seq, 4).status == INCONCLUSIVE

    def test_convergence_is_downward_closed(self):
        candidates = [
            sk_from_pmf(HALF_SPLIT, k_max=4),
            sk_from_pmf(ZPlusPmf.geometric(F(2, 5)), k_max=4),
            sk_from_pmf(ZPlusPmf.geometric(F(3, 5)), k_max=4),
            sk_from_pmf(ZPlusPmf.poisson(2), k_max=4),
            BinomialMomentSeq(
                values=(F(1), F(1)),
                tail=TailCertificate(J=0, C=F(1), rho=F(1), alpha=-4, exact=True),
            ),
            BinomialMomentSeq(values=(F(1), F(1))),
        ]
        for seq in candidates:
            for m in range(1, 11):
                if check_exact_condition(seq, m).converges:
                    for k in range(1, m):
                        assert check_exact_condition(seq, k).converges

    def test_bad_k(self):
        with pytest.raises(BadK):
            check_exact_condition(sk_from_pmf(HALF_SPLIT, 3), 0)


class TestCheckTakacs:
    def test_examples(self):
        assert check_takacs(sk_from_pmf(HALF_SPLIT, 4)).converges
        assert check_takacs(sk_from_pmf(ZPlusPmf.geometric(F(2, 5)), 4)).converges
        assert check_takacs(sk_from_pmf(ZPlusPmf.geometric(F(3, 5)), 4)).diverges
        assert check_takacs(sk_from_pmf(ZPlusPmf.geometric(F(1, 2)), 4)).diverges
        assert check_takacs(sk_from_pmf(ZPlusPmf.poisson(4), 4)).converges

    def test_no_certificate_reports_roots(self):
        seq = BinomialMomentSeq(values=(F(1), F(1, 2), F(1, 4)))
        verdict = check_takacs(seq)
        assert verdict.status == INCONCLUSIVE
        assert "not rigorous" in verdict.witness

    def test_exponential_decay_implies_exact_condition(self):
        for pmf in (HALF_SPLIT, ZPlusPmf.geometric(F(1, 3)), ZPlusPmf.poisson(1)):
            seq = sk_from_pmf(pmf, 4)
            if check_takacs(seq).converges:
                for k in range(1, 6):
                    assert check_exact_condition(seq, k).converges


class TestFinitenessCascade:
    def test_poisson_values(self):
        seq = sk_from_pmf(ZPlusPmf.poisson(3), k_max=2)
        report = finiteness_cascade(seq, l=6)
        assert report.l == 6 and report.all_finite
        assert [k for k, _, _ in report.entries] == [1, 2, 3, 4, 5]
        for k, finite, value in report.entries:
            assert finite
            assert scalar_bounds(value)[0] == F(3**k, _factorial(k))

    def test_geometric_values(self):
        seq = sk_from_pmf(ZPlusPmf.geometric(F(2, 5)), k_max=3)
        report = finiteness_cascade(seq, l=10)
        for k, _, value in report.entries:
            assert value == F(2, 3) ** k

    def test_explicit_beyond_support(self):
        report = finiteness_cascade(sk_from_pmf(HALF_SPLIT, k_max=2), l=6)
        assert report.all_finite
        assert report.entries[-1] == (5, True, F(0))

    def test_bad_l(self):
        with pytest.raises(BadK):
            finiteness_cascade(sk_from_pmf(HALF_SPLIT, 2), l=0)

    def test_unobtainable_level_rejected(self):
        seq = BinomialMomentSeq(values=(F(1), F(1, 2)))
        with pytest.raises(InsufficientPrefix):
            finiteness_cascade(seq, l=4)


class TestDivergenceWitness:
    def test_partial_sums_oscillate_without_bound_above_half(self):
        seq = sk_from_pmf(ZPlusPmf.geometric(F(3, 5)), k_max=26)
        partial = F(0)
        gaps = []
        prev = None
        for j in range(25):
            term = seq.values[j + 1]  # k = 1: C(j, 0) S_{j+1}
            partial = partial + term if j % 2 == 0 else partial - term
            if prev is not None:
                gaps.append(abs(partial - prev))
            prev = partial
        assert gaps == [F(3, 2) ** (j + 2) for j in range(24)]
        assert all(b > a for a, b in zip(gaps, gaps[1:]))
        assert any(g > 1000 for g in gaps)

    def test_truncated_moments_grow_toward_limit(self):
        from exsieve.space import truncate_conditional

        p = F(2, 5)
        pmf = ZPlusPmf.geometric(p)
        for j in range(1, 6):
            prev = F(-1)
            for n in range(1, 41):
                seq_n = sk_from_pmf(truncate_conditional(pmf, n), k_max=j)
                value = seq_n.values[j]
                assert value >= prev
                assert value <= F(2, 3) ** j
                prev = value
