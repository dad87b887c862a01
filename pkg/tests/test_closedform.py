"""Closed formulas, the substitution series, and the tree function."""

from fractions import Fraction
from math import factorial

import pytest

from hurwitz import (
    HurwitzRecord,
    Partition,
    PSeries,
    Truncation,
    c_value,
    class_size,
    count_naive,
    count_transitive,
    exp,
    f0_pdiff,
    f0_series,
    g1_closed,
    g1_defn,
    mu0,
    mu1,
    partitions_of,
    record,
    s_series,
    tree,
)
from hurwitz.closedform import f0_pdiff2, psi_at_s, s_powers
from hurwitz.partitions import a_coeff

TR8 = Truncation()
TR10 = Truncation(N=10, K=10, G=1)


class TestMu0:
    def test_examples(self):
        assert mu0(Partition((1,))) == 1
        assert mu0(Partition((3,))) == 1
        assert mu0(Partition((2, 1))) == 4

    def test_against_enumeration(self):
        for parts, g in (((1,), 0), ((3,), 0), ((2, 1), 0)):
            alpha = Partition(parts)
            c = count_naive(alpha, 0)
            assert mu0(alpha) == Fraction(class_size(alpha) * c, factorial(alpha.n))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            mu0(Partition())


class TestMu1:
    def test_examples(self):
        assert mu1(Partition((1,))) == 0
        assert mu1(Partition((2,))) == Fraction(1, 2)
        assert mu1(Partition((3,))) == 9

    def test_against_oracle(self):
        for parts in ((2,), (3,), (2, 1), (1, 1, 1), (4,)):
            alpha = Partition(parts)
            c = count_transitive(alpha, 1)
            assert mu1(alpha) == Fraction(class_size(alpha) * c, factorial(alpha.n))

    def test_counts_are_integers(self):
        for n in range(1, 13):
            for alpha in partitions_of(n):
                value = mu1(alpha) * factorial(n) / class_size(alpha)
                assert value.denominator == 1 and value >= 0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            mu1(Partition())


class TestRecords:
    def test_record_consistency(self):
        rec = record(Partition((3, 1)), 1)
        assert rec.r == 4 + 2  # n + m at genus 1
        assert rec.mu * factorial(4) == class_size(Partition((3, 1))) * rec.c

    def test_bad_record_rejected(self):
        with pytest.raises(ValueError):
            HurwitzRecord(Partition((2,)), 0, 1, Fraction(1), 3)

    def test_c_value_genus_bound(self):
        with pytest.raises(ValueError):
            c_value(Partition((2,)), 2)


class TestG1Series:
    def test_defn_linear_term_vanishes(self):
        assert g1_defn(TR8).coeff(1, 0, (1,)) == 0

    def test_defn_normalization_contract(self):
        # n!/|C_alpha| * (n+m)! * coefficient recovers c_1(alpha)
        g1 = g1_defn(TR8)
        for parts in ((2,), (3,), (2, 1)):
            alpha = Partition(parts)
            n, m = alpha.n, alpha.m
            coeff = g1.coeff(n, 0, alpha.parts)
            got = coeff * factorial(n) * factorial(n + m) / class_size(alpha)
            assert got == count_transitive(alpha, 1)

    def test_closed_constant_term_vanishes(self):
        assert g1_closed(TR8).coeff(0, 0, ()) == 0

    def test_closed_equals_defn(self):
        assert g1_closed(TR8) == g1_defn(TR8)

    def test_two_cycle_coefficient(self):
        assert g1_closed(TR8).coeff(2, 0, (2,)) == g1_defn(TR8).coeff(2, 0, (2,))


class TestGoldenSerialization:
    def test_g1_matches_frozen_json(self):
        import json
        from pathlib import Path

        tr = Truncation(N=4, K=4, G=0)
        golden = json.loads(
            (Path(__file__).parent / "data" / "g1_n4.json").read_text()
        )
        assert g1_defn(tr).to_json_obj() == golden
        assert PSeries.from_json_obj(tr, golden) == g1_defn(tr)


class TestSubstitutionSeries:
    def test_leading_orders(self):
        s = s_series(TR8)
        assert s.coeff(1, 0, ()) == 1
        assert s.coeff(2, 0, (1,)) == 1
        assert s.coeff(3, 0, (1, 1)) == Fraction(3, 2)
        assert s.coeff(3, 0, (2,)) == 2

    def test_lagrange_inversion_oracle(self):
        # [x^n] s carries, on p_lambda with lambda of size n-1, the weight
        # (1/n) prod_r (n a_r / r)^{m_r} / m_r!  (multinomial expansion)
        s = s_series(TR10)
        for n in range(1, 11):
            expected = {}
            for lam in partitions_of(n - 1):
                coeff = Fraction(1, n)
                for r, mr in lam.mults().items():
                    coeff *= (n * a_coeff(r) / r) ** mr / factorial(mr)
                if coeff:
                    expected[(n, 0, lam.pexp())] = coeff
            got = {
                mono: c for mono, c in s.terms.items() if mono[0] == n
            }
            assert got == expected

    def test_euler_identity(self):
        # x ds/dx (1 - psi_1) = s
        s = s_series(TR8)
        one = PSeries.one(TR8)
        assert s.xdiff() * (one - psi_at_s(1, TR8)) == s

    def test_p_derivative_identity(self):
        # k ds/dp_k (1 - psi_1) = a_k s^(k+1)
        s = s_series(TR8)
        one = PSeries.one(TR8)
        omp = one - psi_at_s(1, TR8)
        pw = s_powers(TR8)
        for k in (1, 2, 3):
            assert s.pdiff(k) * omp * k == pw[k + 1] * a_coeff(k)


class TestF0:
    def test_pdiff_leading_term(self):
        d1 = f0_pdiff(1, TR8)
        assert d1.coeff(1, 0, ()) == 1  # begins with s = x + ...

    def test_pdiff_matches_assembled_series(self):
        f0 = f0_series(TR8)
        for k in (1, 2, 3, 4):
            assert f0.pdiff(k) == f0_pdiff(k, TR8)

    def test_mixed_second_derivative_product_form(self):
        f0 = f0_series(TR8)
        for i, j in ((1, 1), (1, 2), (2, 3), (3, 1)):
            want = f0_pdiff2(i, j, TR8)
            assert f0_pdiff(i, TR8).pdiff(j) == want
            assert f0.pdiff(i).pdiff(j) == want

    def test_euler_square_is_psi0(self):
        assert f0_series(TR8).xdiff().xdiff() == psi_at_s(0, TR8)


class TestTreeFunction:
    def test_known_coefficients(self):
        t = tree(TR8)
        assert t.w.coeff(3, 0, ()) == Fraction(3, 2)
        assert t.w.coeff(4, 0, ()) == Fraction(8, 3)

    def test_coefficients_to_order_ten(self):
        t = tree(TR10)
        for n in range(1, 11):
            assert t.w.coeff(n, 0, ()) == Fraction(n ** (n - 1), factorial(n))

    def test_functional_equation(self):
        t = tree(TR8)
        assert t.w == PSeries.x(TR8) * exp(t.w)

    def test_derivative_identities(self):
        t = tree(TR8)
        one = PSeries.one(TR8)
        omw = one - t.w
        assert t.d1 * omw == t.w
        assert t.d2 * omw * omw * omw == t.w
        assert t.d3 * omw * omw * omw * omw * omw == t.w + t.w * t.w * 2
