"""Factorization counting: enumeration vs walk DP vs character sums."""

import random
from fractions import Fraction
from math import factorial

import pytest

from hurwitz import (
    FactorizationProblem,
    Partition,
    Permutation,
    SizeLimitExceeded,
    canonical_rep,
    class_size,
    count_naive,
    count_transitive,
    count_walks,
    mu0,
)

# Character table of S_3: rows (trivial, sign, standard) on the classes
# (1,1,1), (2,1), (3); used as an independent oracle for walk counts.
S3_CHARS = [
    (1, 1, 1),
    (1, -1, 1),
    (2, 0, -1),
]
S3_CLASS_OF = {Partition((1, 1, 1)): 0, Partition((2, 1)): 1, Partition((3,)): 2}


def s3_walks_by_characters(alpha: Partition, r: int) -> int:
    """Ordered products of r transpositions equal to a fixed element of
    class alpha, via the class-algebra formula
    |C_t|^r / |G| * sum_chi chi(t)^r chi(pi^{-1}) / chi(1)^(r-1)."""
    col = S3_CLASS_OF[alpha]
    total = Fraction(0)
    for chi in S3_CHARS:
        total += Fraction(chi[1] ** r * chi[col], chi[0] ** (r - 1))
    value = Fraction(3**r, 6) * total
    assert value.denominator == 1
    return int(value)


class TestPermutation:
    def test_bijection_required(self):
        with pytest.raises(ValueError):
            Permutation((1, 1, 3))

    def test_product_left_to_right(self):
        a = Permutation((2, 1, 3))  # (1 2)
        b = Permutation((1, 3, 2))  # (2 3)
        assert (a * b).images == (3, 1, 2)  # 1->2->3, 2->1, 3->3->2

    def test_inverse(self):
        g = Permutation((3, 1, 2))
        assert (g * g.inverse()).images == (1, 2, 3)

    def test_cycle_type(self):
        g = Permutation((2, 3, 1, 5, 4))
        assert g.cycle_type() == Partition((3, 2))

    def test_canonical_rep(self):
        g = canonical_rep(Partition((3, 2)))
        assert g.images == (2, 3, 1, 5, 4)
        assert g.cycle_type() == Partition((3, 2))


class TestFactorizationProblem:
    def test_length(self):
        assert FactorizationProblem(Partition((2, 1)), 0).r == 3
        assert FactorizationProblem(Partition((2,)), 1).r == 3

    def test_validation(self):
        with pytest.raises(ValueError):
            FactorizationProblem(Partition(), 0)
        with pytest.raises(ValueError):
            FactorizationProblem(Partition((2,)), -1)


class TestCountNaive:
    def test_trivial_target(self):
        assert count_naive(Partition((1,)), 0) == 1

    def test_two_cycle_genus_one(self):
        assert count_naive(Partition((2,)), 1) == 1

    def test_three_cycle_genus_zero(self):
        assert count_naive(Partition((3,)), 0) == 3

    def test_budget_refusal(self):
        with pytest.raises(SizeLimitExceeded):
            count_naive(Partition((6,)), 0)  # n beyond budget
        with pytest.raises(SizeLimitExceeded):
            count_naive(Partition((1, 1, 1, 1, 1)), 2)  # r = 12 beyond budget


class TestCountWalks:
    def test_identity_in_s2(self):
        assert count_walks(Partition((1, 1)), 2) == 1

    def test_parity_obstruction(self):
        assert count_walks(Partition((2,)), 2) == 0

    def test_character_oracle_s3(self):
        for alpha in (Partition((3,)), Partition((2, 1)), Partition((1, 1, 1))):
            n_minus_m = 3 - alpha.m
            for r in range(1, 7):
                want = s3_walks_by_characters(alpha, r)
                if (r - n_minus_m) % 2:
                    want = 0  # the character sum also vanishes; be explicit
                assert count_walks(alpha, r) == want

    def test_conjugation_invariance(self):
        rng = random.Random(7)
        for alpha in (Partition((3, 1)), Partition((2, 2)), Partition((4, 1))):
            n = alpha.n
            r = n + alpha.m
            base = count_walks(alpha, r)
            images = list(range(1, n + 1))
            rng.shuffle(images)
            h = Permutation(images)
            conj = h.inverse() * canonical_rep(alpha) * h
            assert count_walks(alpha, r, rep=conj) == base

    def test_rep_type_checked(self):
        with pytest.raises(ValueError):
            count_walks(Partition((3,)), 2, rep=Permutation((1, 2, 3)))

    def test_size_refusal(self):
        with pytest.raises(SizeLimitExceeded):
            count_walks(Partition((8,)), 7)


class TestCountTransitive:
    def test_identity_class_genus_one(self):
        assert count_transitive(Partition((1, 1)), 1) == 1

    def test_transposition_fixed_point(self):
        assert count_transitive(Partition((2, 1)), 0) == 8

    def test_full_cycle_equals_walks(self):
        # a full cycle is itself transitive, so the sieve removes nothing
        for n in range(2, 6):
            alpha = Partition((n,))
            for g in (0, 1, 2):
                r = n + 1 + 2 * (g - 1)
                assert count_transitive(alpha, g) == count_walks(alpha, r)

    def test_matches_naive_enumeration(self):
        for n in range(1, 5):
            from hurwitz import partitions_of

            for alpha in partitions_of(n):
                for g in (0, 1):
                    assert count_transitive(alpha, g) == count_naive(alpha, g)

    def test_genus_zero_matches_closed_formula(self):
        from hurwitz import partitions_of

        for n in range(1, 6):
            for alpha in partitions_of(n):
                c = count_transitive(alpha, 0)
                assert Fraction(class_size(alpha) * c, factorial(n)) == mu0(alpha)

    def test_six_cycle_spot_check(self):
        from hurwitz import c_value

        alpha = Partition((6,))
        assert count_transitive(alpha, 0) == c_value(alpha, 0)

    def test_minimal_factorizations_count_labeled_trees(self):
        # an n-cycle splits into n-1 transpositions transitively in n^(n-2)
        # ways, in bijection with labeled trees on n vertices
        from hurwitz import c_value

        for n in range(2, 9):
            assert c_value(Partition((n,)), 0) == n ** (n - 2)
        for n in range(2, 6):
            assert count_naive(Partition((n,)), 0) == n ** (n - 2)

    def test_size_refusal(self):
        with pytest.raises(SizeLimitExceeded):
            count_transitive(Partition((8,)), 0)
