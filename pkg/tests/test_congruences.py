from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from eulermod.congruences import (
    QAdicContext,
    adams_thangadurai_valuation,
    alternating_power_sum,
    bernoulli_poly_congruence_route,
    check_bernoulli_poly_congruence,
    check_euler_mod_odd,
    check_euler_mod_two_power,
    check_euler_poly_congruence,
    check_power_sum_divisibility,
    cleared_coefficient_valuation,
    congruent_mod,
    euler_mod_2n,
    is_q_integer,
    kummer_check,
    poly_congruent_mod,
    signed_floor_sum_identity,
    stern_sum,
    stern_valuation,
)
from eulermod.exactmath import UnivariatePolynomial, v_adic
from eulermod.special import euler_number


class TestQIntegers:
    def test_examples(self):
        assert is_q_integer(Fraction(1, 2), QAdicContext(3))
        assert not is_q_integer(Fraction(1, 2), QAdicContext(4))
        assert is_q_integer(Fraction(-7, 15), QAdicContext(4))
        assert is_q_integer(5, QAdicContext(10))

    def test_context_requires_q_above_one(self):
        for bad in (1, 0, -3):
            with pytest.raises(ValueError):
                QAdicContext(bad)


def q_integers(q: int):
    return st.builds(
        Fraction,
        st.integers(-10**6, 10**6),
        st.integers(1, 400).filter(lambda d: gcd(d, q) == 1),
    )


class TestCongruentMod:
    def test_reflexive(self):
        report = congruent_mod(Fraction(3, 7), Fraction(3, 7), QAdicContext(5))
        assert report.holds and report.quotient_witness == 0

    def test_integer_example(self):
        report = congruent_mod(17, -1, QAdicContext(3))
        assert report.holds
        assert report.lhs - report.rhs == 3 * report.quotient_witness

    def test_rational_example(self):
        report = congruent_mod(Fraction(1, 3), 3, QAdicContext(4))
        assert report.holds
        assert report.quotient_witness == Fraction(-2, 3)

    def test_negative_case(self):
        assert not congruent_mod(1, 2, QAdicContext(4)).holds

    def test_rejects_non_q_integer(self):
        with pytest.raises(ValueError, match="1/2"):
            congruent_mod(Fraction(1, 2), 0, QAdicContext(4))

    @given(st.integers(2, 60).flatmap(
        lambda q: st.tuples(st.just(q), q_integers(q), q_integers(q), q_integers(q))))
    @settings(max_examples=150)
    def test_equivalence_and_ring_compatibility(self, data):
        q, x, y, z = data
        ctx = QAdicContext(q)
        assert congruent_mod(x, x, ctx).holds
        xy = congruent_mod(x, y, ctx)
        assert xy.holds == congruent_mod(y, x, ctx).holds
        if xy.holds:
            # witness reconstructs the difference exactly
            assert x - y == q * xy.quotient_witness
            assert is_q_integer(xy.quotient_witness, ctx)
            assert congruent_mod(x + z, y + z, ctx).holds
            assert congruent_mod(x * z, y * z, ctx).holds
            if congruent_mod(y, z, ctx).holds:
                assert congruent_mod(x, z, ctx).holds


class TestPolyCongruentMod:
    def test_reflexive(self):
        p = UnivariatePolynomial([Fraction(1, 3), 2, 1])
        assert poly_congruent_mod(p, p, QAdicContext(7))

    def test_example_mod_four(self):
        p = UnivariatePolynomial([Fraction(1, 3), 0, 1])
        q = UnivariatePolynomial([3, 0, 1])
        assert poly_congruent_mod(p, q, QAdicContext(4))

    def test_constant_mismatch(self):
        x = UnivariatePolynomial([0, 1])
        assert not poly_congruent_mod(x, x + 1, QAdicContext(2))

    def test_padding_with_zero(self):
        p = UnivariatePolynomial([1])
        q = UnivariatePolynomial([1, 5])
        assert poly_congruent_mod(p, q, QAdicContext(5))
        assert not poly_congruent_mod(p, q, QAdicContext(3))

    def test_bad_coefficient_names_index(self):
        p = UnivariatePolynomial([0, Fraction(1, 2)])
        with pytest.raises(ValueError, match="coefficient 1"):
            poly_congruent_mod(p, p, QAdicContext(4))


class TestAlternatingPowerSum:
    def test_examples(self):
        assert alternating_power_sum(3, 2) == 17
        assert alternating_power_sum(5, 4) == 4705
        assert alternating_power_sum(1, 11) == 1

    @given(st.integers(1, 50), st.integers(0, 30), st.integers(2, 500))
    @settings(max_examples=100)
    def test_modular_route_matches_exact(self, q, k, modulus):
        assert alternating_power_sum(q, k, modulus=modulus) == \
            alternating_power_sum(q, k) % modulus

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            alternating_power_sum(0, 2)
        with pytest.raises(ValueError):
            alternating_power_sum(3, -1)


class TestEulerModOdd:
    @pytest.mark.parametrize("k,q", [(2, 3), (0, 1), (12, 35), (8, 15), (20, 99)])
    def test_holds(self, k, q):
        assert check_euler_mod_odd(k, q).holds

    def test_witness_reconstructs(self):
        report = check_euler_mod_odd(2, 3)
        assert report.lhs == -1 and report.rhs == 17
        assert report.lhs - report.rhs == 3 * report.quotient_witness

    def test_rejects_even_q(self):
        with pytest.raises(ValueError):
            check_euler_mod_odd(2, 4)

    def test_rejects_odd_k(self):
        with pytest.raises(ValueError):
            check_euler_mod_odd(3, 5)


class TestSternSum:
    def test_examples(self):
        assert stern_sum(2, 2, 3) == 82
        assert stern_sum(2, 1, 3) == 18
        assert stern_sum(7, 3, 1) == 0
        assert stern_sum(0, 1, 3) == 2

    def test_rejects_even_m(self):
        with pytest.raises(ValueError):
            stern_sum(2, 2, 4)

    @given(st.integers(0, 24), st.integers(1, 7),
           st.sampled_from([1, 3, 5, 7, 9, 11, 13, 15]), st.integers(2, 300))
    @settings(max_examples=100)
    def test_modular_route_matches_exact(self, k, n, m, modulus):
        assert stern_sum(k, n, m, modulus=modulus) == stern_sum(k, n, m) % modulus

    @pytest.mark.parametrize("n", range(1, 9))
    def test_parity_for_m3(self, n):
        for k in range(0, 32, 2):
            assert stern_sum(k, n, 3) % 2 == 0


class TestClearedCongruence:
    def test_worked_example(self):
        report = check_euler_mod_two_power(2, 2, 3)
        assert report.holds
        assert report.lhs == -28 and report.rhs == 1476 and report.modulus == 16
        assert (report.lhs - report.rhs) % 16 == 0

    def test_degenerate_m1(self):
        report = check_euler_mod_two_power(0, 1, 1)
        assert report.holds and report.lhs == 0 and report.rhs == 0

    @pytest.mark.parametrize("k,n,m", [(10, 8, 5), (12, 4, 7), (40, 10, 15), (6, 6, 11)])
    def test_holds(self, k, n, m):
        assert check_euler_mod_two_power(k, n, m).holds

    def test_rejects_odd_k(self):
        with pytest.raises(ValueError):
            check_euler_mod_two_power(3, 2, 3)

    def test_coefficient_valuation(self):
        # (3**(k+1) + 1)/4 is odd for even k; the m = 7 coefficient need not be
        assert cleared_coefficient_valuation(2, 3) == 0
        assert cleared_coefficient_valuation(2, 7) > 0
        assert cleared_coefficient_valuation(4, 1) == -1


class TestEulerModTwoPowerEvaluator:
    def test_examples(self):
        assert euler_mod_2n(2, 2) == 3
        assert euler_mod_2n(0, 1) == 1
        assert euler_mod_2n(4, 3) == 5

    @pytest.mark.parametrize("n", range(1, 9))
    def test_matches_exact_reduction(self, n):
        for k in range(0, 62, 2):
            assert euler_mod_2n(k, n) == euler_number(k) % (1 << n)

    def test_rejects_odd_k(self):
        with pytest.raises(ValueError):
            euler_mod_2n(3, 2)

    def test_rejects_nonpositive_n(self):
        with pytest.raises(ValueError):
            euler_mod_2n(2, 0)


class TestPowerSumDivisibility:
    @pytest.mark.parametrize("k,n", [(2, 2), (0, 1), (40, 10), (18, 12)])
    def test_holds(self, k, n):
        assert check_power_sum_divisibility(k, n)

    def test_worked_instance(self):
        assert alternating_power_sum(4, 2) == -32  # divisible by 2**3

    def test_rejects_odd_k(self):
        with pytest.raises(ValueError):
            check_power_sum_divisibility(3, 2)


class TestSternValuation:
    def test_examples(self):
        r = stern_valuation(4, 2)
        assert (r.v_index, r.v_value) == (1, 1)
        r = stern_valuation(6, 2)
        assert (r.v_index, r.v_value) == (2, 2)

    def test_symmetry(self):
        a, b = stern_valuation(10, 4), stern_valuation(4, 10)
        assert (a.v_index, a.v_value) == (b.v_index, b.v_value)

    def test_rejects_equal_indices(self):
        with pytest.raises(ValueError):
            stern_valuation(4, 4)

    def test_rejects_odd_indices(self):
        with pytest.raises(ValueError):
            stern_valuation(3, 1)


class TestSignedFloorSum:
    def test_examples(self):
        assert signed_floor_sum_identity(0, 1, 2) == (0, 0)
        assert signed_floor_sum_identity(1, 3, 4) == (2, 2)
        computed, closed = signed_floor_sum_identity(-3, 5, 8)
        assert computed == closed

    def test_rejects_odd_q(self):
        with pytest.raises(ValueError):
            signed_floor_sum_identity(1, 3, 5)

    def test_rejects_shared_factor(self):
        with pytest.raises(ValueError):
            signed_floor_sum_identity(1, 6, 4)

    @given(st.integers(-30, 30), st.integers(0, 7), st.integers(1, 16))
    @settings(max_examples=120)
    def test_identity_everywhere(self, a, m_half, q_half):
        m, q = 2 * m_half + 1, 2 * q_half
        assume(gcd(m, q) == 1)
        computed, closed = signed_floor_sum_identity(a, m, q)
        assert computed == closed


class TestBernoulliPolyCongruence:
    def test_route_selection(self):
        assert bernoulli_poly_congruence_route(3, 4) == "stated"
        assert bernoulli_poly_congruence_route(2, 4) == "cleared"

    @pytest.mark.parametrize("a,k,m,q", [
        (0, 1, 1, 3),
        (2, 3, 3, 4),
        (-1, 2, 5, 6),
        (5, 7, 2, 9),
        (-4, 4, 3, 16),
    ])
    def test_holds(self, a, k, m, q):
        assert check_bernoulli_poly_congruence(a, k, m, q)

    def test_rejects_shared_factor(self):
        with pytest.raises(ValueError):
            check_bernoulli_poly_congruence(0, 2, 3, 6)

    def test_rejects_zero_k(self):
        with pytest.raises(ValueError):
            check_bernoulli_poly_congruence(0, 0, 1, 3)


class TestEulerPolyCongruence:
    def test_degenerate_m1(self):
        for k in range(7):
            assert check_euler_poly_congruence(0, k, 1, 2)

    @pytest.mark.parametrize("a,k,m,q", [
        (1, 2, 3, 4),
        (3, 4, 5, 6),
        (-2, 5, 3, 8),
        (0, 6, 7, 16),
    ])
    def test_holds(self, a, k, m, q):
        assert check_euler_poly_congruence(a, k, m, q)

    def test_rejects_odd_q(self):
        with pytest.raises(ValueError):
            check_euler_poly_congruence(0, 2, 2, 5)

    def test_rejects_shared_factor(self):
        with pytest.raises(ValueError):
            check_euler_poly_congruence(0, 2, 3, 6)


class TestKummer:
    def test_counterexample_instance(self):
        result = kummer_check(13, 2, 16, 4)
        assert result.report.holds
        assert not result.exponent_congruent
        assert result.report.modulus == 169

    def test_guaranteed_instance(self):
        result = kummer_check(5, 1, 6, 2)
        assert result.report.holds and result.exponent_congruent
        assert result.report.lhs == Fraction(1, 252)
        assert result.report.rhs == Fraction(1, 12)

    def test_equal_indices(self):
        result = kummer_check(7, 2, 10, 10)
        assert result.report.holds and result.exponent_congruent

    def test_rejects_denominator_prime(self):
        with pytest.raises(ValueError, match="divides"):
            kummer_check(5, 1, 8, 2)

    def test_rejects_two_and_composite(self):
        with pytest.raises(ValueError):
            kummer_check(2, 1, 4, 2)
        with pytest.raises(ValueError):
            kummer_check(9, 1, 4, 2)

    @pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (7, 1), (5, 2), (3, 2)])
    def test_guarantee_direction_sweep(self, p, n):
        # the guarantee needs min(k, l) > n; below that the value congruence
        # picks up an Euler-factor correction and can genuinely fail
        phi = p ** (n - 1) * (p - 1)
        start = n + 2 if (n + 2) % 2 == 0 else n + 3
        for l in range(start, start + 2 * phi, 2):
            if l % (p - 1) == 0:
                continue
            result = kummer_check(p, n, l + phi, l)
            assert result.exponent_congruent
            assert result.report.holds

    def test_uncorrected_congruence_fails_at_small_index(self):
        # 22 = 2 mod phi(25), yet B_22/22 - B_2/2 = 19415/69 has 5-valuation
        # exactly 1: the exponent flag does not force the congruence when
        # min(k, l) <= n
        result = kummer_check(5, 2, 22, 2)
        assert result.exponent_congruent
        assert not result.report.holds
        assert v_adic(result.report.lhs - result.report.rhs, 5) == 1


class TestAdamsThangadurai:
    def test_examples(self):
        assert adams_thangadurai_valuation(13, 26) == (1, 1)
        assert adams_thangadurai_valuation(5, 2) == (0, 0)
        assert adams_thangadurai_valuation(7, 14) == (1, 1)

    def test_rejects_denominator_prime(self):
        with pytest.raises(ValueError):
            adams_thangadurai_valuation(5, 8)

    def test_lower_bound_sweep(self):
        for p in (3, 5, 7, 11, 13):
            for k in range(2, 80, 2):
                if k % (p - 1) == 0:
                    continue
                n, w = adams_thangadurai_valuation(p, k)
                assert n == v_adic(k, p)
                assert w >= n
                if n > 0:
                    assert w <= n + 1
