from __future__ import annotations

import random
from fractions import Fraction

import pytest

from clusterbody import reference as ref
from clusterbody.exchange import lex_lt, lex_prec
from clusterbody.symfun import (
    LaurentPoly,
    RationalFn,
    SymfunError,
    add,
    div,
    echelon_by_order,
    is_laurent,
    lowest_term,
    mul,
    parse,
    span_rank,
    substitute,
    to_text,
)

t1, t2, t3 = LaurentPoly.gens(3)


def random_poly(rng, n=3, terms=3, lo=-2, hi=2):
    p = LaurentPoly.zero(n)
    while p.is_zero():
        for _ in range(terms):
            p = p + LaurentPoly.monomial(tuple(rng.randint(lo, hi) for _ in range(n)), rng.choice([-2, -1, 1, 3]))
    return p


def evaluate(f: RationalFn, point):
    return f.num.evaluate(point) / f.den.evaluate(point)


class TestArithmetic:
    def test_cancellation(self):
        f = div(mul(t1 + t3, t2), t1 + t3)
        assert f == RationalFn.from_poly(t2)
        assert f.is_laurent()

    def test_exchange_instance(self):
        f = div(t2 * t3 + t1 * t2, t1 + t3)
        assert is_laurent(f)
        assert f.as_laurent() == t2

    def test_not_laurent(self):
        f = div(1, RationalFn.from_poly(1 + t1))
        assert not is_laurent(f)

    def test_monomial_denominator_is_laurent(self):
        f = div(t1 + t2, t1 * t3 ** 2)
        assert f.is_laurent()
        assert f.as_laurent() == t3 ** -2 + t1 ** -1 * t2 * t3 ** -2

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            div(t1, LaurentPoly.zero(3))

    def test_arity_mismatch(self):
        with pytest.raises(SymfunError):
            RationalFn(LaurentPoly.one(2), LaurentPoly.one(3))

    def test_field_operations_against_evaluation(self):
        rng = random.Random(5)
        for _ in range(60):
            f = RationalFn(random_poly(rng), random_poly(rng, terms=2))
            g = RationalFn(random_poly(rng), random_poly(rng, terms=2))
            pt = [Fraction(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(3)]
            try:
                fv, gv = evaluate(f, pt), evaluate(g, pt)
            except ZeroDivisionError:
                continue
            assert evaluate(add(f, g), pt) == fv + gv
            assert evaluate(mul(f, g), pt) == fv * gv
            if gv != 0 and not g.is_zero():
                assert evaluate(div(f, g), pt) == fv / gv

    def test_equality_is_representation_free(self):
        h = t1 + 2 * t2
        f = RationalFn(t1 * h, (1 + t3) * h)
        assert f == RationalFn(t1, 1 + t3)

    def test_substitute(self):
        f = t1 ** 2 * t2 ** -1 + t3
        images = [RationalFn.from_poly(t2 + t3), RationalFn(t1, t1 + t2), RationalFn.from_poly(t1)]
        got = substitute(f, images)
        want = images[0] ** 2 * images[1] ** -1 + images[2]
        assert got == want


class TestText:
    def test_round_trip(self):
        rng = random.Random(9)
        for _ in range(50):
            p = random_poly(rng)
            assert parse(to_text(p), 3) == p

    def test_format(self):
        assert to_text(t1 ** 2 * t2 + t1 * t2 * t3) == "t1^2*t2 + t1*t2*t3"
        assert to_text(LaurentPoly.zero(3)) == "0"
        assert parse("-1/2*t1^-1 + 3", 3) == LaurentPoly({(-1, 0, 0): Fraction(-1, 2), (0, 0, 0): 3}, 3)


class TestLowestTerm:
    def test_constant(self):
        for order in (lex_lt(3), lex_prec(3)):
            assert lowest_term(LaurentPoly.const(5, 3), order) == (0, 0, 0)

    def test_sum_of_two_variables(self):
        assert lowest_term(t1 + t3, lex_prec(3)) == (1, 0, 0)
        assert lowest_term(t1 + t3, lex_lt(3)) == (0, 0, 1)

    def test_product(self):
        f = t1 * t2 * (t1 + t3)
        assert lowest_term(f, lex_prec(3)) == (2, 1, 0)
        assert lowest_term(f, lex_lt(3)) == (1, 1, 1)

    def test_table(self):
        for text, low, tilde in ref.SL3_TABLE:
            f = parse(text, 3)
            assert lowest_term(f, lex_lt(3)) == low
            assert lowest_term(f, lex_prec(3)) == tilde

    def test_zero(self):
        with pytest.raises(SymfunError):
            lowest_term(LaurentPoly.zero(3), lex_lt(3))

    def test_quotient_independent_of_representation(self):
        rng = random.Random(2)
        order = lex_prec(3)
        for _ in range(50):
            f, g, h = random_poly(rng), random_poly(rng), random_poly(rng)
            assert lowest_term(RationalFn(f * h, g * h), order) == lowest_term(RationalFn(f, g), order)


@pytest.mark.parametrize("order", [lex_lt(3), lex_prec(3)], ids=["lex_lt", "lex_prec"])
def test_valuation_axioms(order):
    rng = random.Random(17)
    for _ in range(200):
        f = RationalFn(random_poly(rng), random_poly(rng, terms=2))
        g = RationalFn(random_poly(rng), random_poly(rng, terms=2))
        vf, vg = lowest_term(f, order), lowest_term(g, order)
        assert lowest_term(f * g, order) == tuple(a + b for a, b in zip(vf, vg))
        assert lowest_term(f * Fraction(3, 7), order) == vf
        s = f + g
        if not s.is_zero():
            assert not order.less(lowest_term(s, order), min(vf, vg, key=order.key))


def test_one_dimensional_leaves():
    # random spanning sets of the eight-function space have the table as value set
    funcs = [parse(text, 3) for text, _, _ in ref.SL3_TABLE]
    rng = random.Random(4)
    for order, col in ((lex_lt(3), 1), (lex_prec(3), 2)):
        want = sorted(row[col] for row in ref.SL3_TABLE)
        mixed = [sum((rng.randint(-3, 3) * f for f in funcs), LaurentPoly.zero(3)) for _ in range(12)]
        assert span_rank(mixed) == 8
        assert sorted(echelon_by_order(mixed, order)) == want
