"""Tests for finite field arithmetic."""

import random
from itertools import product

import pytest

from src.finite_field import (
    FieldElement,
    field_for_order,
    field_new,
    is_irreducible,
    smallest_irreducible,
)


class TestFieldNew:
    """Tests for field construction."""

    def test_prime_field(self):
        ctx = field_new(2)
        assert (ctx.p, ctx.k, ctx.q) == (2, 1, 2)
        assert ctx.modulus == ()

    def test_gf4_modulus(self):
        """x^2 + x + 1 is the only irreducible quadratic over GF(2)."""
        assert field_new(2, 2).modulus == (1, 1, 1)

    def test_gf8_modulus(self):
        assert field_new(2, 3).modulus == (1, 1, 0, 1)

    def test_non_prime_characteristic(self):
        with pytest.raises(ValueError, match="prime"):
            field_new(4)

    def test_bad_degree(self):
        with pytest.raises(ValueError):
            field_new(2, 0)

    def test_order_limit(self):
        with pytest.raises(ValueError, match="limit"):
            field_new(2, 21)

    def test_for_order(self):
        ctx = field_for_order(9)
        assert (ctx.p, ctx.k) == (3, 2)

    def test_for_order_rejects_composite(self):
        with pytest.raises(ValueError, match="prime power"):
            field_for_order(6)

    def test_contexts_compare_by_value(self):
        assert field_new(3) == field_new(3)
        assert field_new(2, 2) != field_new(2)


class TestIrreducibility:
    """Tests for the exhaustive irreducibility test."""

    def test_reducible_square(self):
        assert not is_irreducible([1, 0, 1], 2)  # (x + 1)^2

    def test_irreducible_quadratic_gf3(self):
        assert is_irreducible([1, 0, 1], 3)  # x^2 + 1 has no root mod 3

    def test_smallest_is_smallest(self):
        poly = smallest_irreducible(3, 2)
        assert poly == [1, 0, 1]


class TestFieldOps:
    """Tests for element arithmetic."""

    def test_gf2_addition(self):
        ctx = field_new(2)
        assert ctx.add(1, 1) == 0

    def test_gf3_inverse(self):
        assert field_new(3).inv(2) == 2

    def test_gf4_x_squared(self):
        """x * x = x + 1 under x^2 + x + 1."""
        ctx = field_new(2, 2)
        assert ctx.mul(2, 2) == 3

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            field_new(5).inv(0)

    @pytest.mark.parametrize("p,k", [
        (2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1),
        (13, 1), (2, 4), (17, 1), (19, 1), (23, 1), (5, 2),
    ])
    def test_field_axioms_exhaustive(self, p, k):
        """Associativity, commutativity and distributivity over all triples."""
        ctx = field_new(p, k)
        q = ctx.q
        for a, b, c in product(range(q), repeat=3):
            assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
            assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
            assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
        for a, b in product(range(q), repeat=2):
            assert ctx.add(a, b) == ctx.add(b, a)
            assert ctx.mul(a, b) == ctx.mul(b, a)
        for a in range(q):
            assert ctx.add(a, 0) == a
            assert ctx.mul(a, 1) == a
            assert ctx.add(a, ctx.neg(a)) == 0
            if a:
                assert ctx.mul(a, ctx.inv(a)) == 1

    @pytest.mark.parametrize("p,k", [(2, 1), (7, 1), (2, 2), (2, 4), (3, 3), (13, 1)])
    def test_multiplicative_group_order(self, p, k):
        ctx = field_new(p, k)
        for a in range(1, ctx.q):
            assert ctx.pow(a, ctx.q - 1) == 1
            assert ctx.mul(a, ctx.inv(a)) == 1

    def test_tables_agree_with_direct_arithmetic(self):
        ctx = field_new(3, 3)
        for a, b in product(range(ctx.q), repeat=2):
            assert ctx.mul(a, b) == ctx._mul_direct(a, b)
            assert ctx.add(a, b) == ctx._add_direct(a, b)

    def test_large_field_without_tables(self):
        """Above the table limit arithmetic falls back to direct computation."""
        ctx = field_new(8191)
        assert ctx.mul_table is None
        assert ctx.inv(2) == 4096
        rng = random.Random(7)
        for _ in range(200):
            a, b, c = (rng.randrange(ctx.q) for _ in range(3))
            assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))

    def test_large_extension_field_axioms(self):
        ctx = field_new(2, 13)
        rng = random.Random(13)
        for _ in range(100):
            a = rng.randrange(1, ctx.q)
            assert ctx.mul(a, ctx.inv(a)) == 1
            assert ctx.sub(ctx.add(a, 5), 5) == a


class TestFieldElement:
    """Tests for the FieldElement wrapper."""

    def test_operators(self):
        ctx = field_new(5)
        a, b = ctx.element(3), ctx.element(4)
        assert int(a + b) == 2
        assert int(a * b) == 2
        assert int(a - b) == 4
        assert int(-a) == 2
        assert (a / b) * b == a
        assert int(a**4) == 1

    def test_mixed_contexts(self):
        a = field_new(5).element(1)
        b = field_new(7).element(1)
        with pytest.raises(ValueError, match="Mixed"):
            a + b

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            field_new(3).element(3)

    def test_zero_and_one(self):
        ctx = field_new(2, 2)
        assert ctx.zero == FieldElement(0, ctx)
        assert ctx.one * ctx.element(3) == ctx.element(3)
        assert len(ctx.elements()) == 4
