"""Rational and rational-function backends: frozen values and field laws."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wildlimits import (QQ, FracField, MixedContext, ZeroDenominator,
                        half_binomial, ratfunc_normalize, rational_from_str,
                        rational_to_str)
from conftest import fresh_rng
from property_checks import check_field_axioms, sample_ratfunc, sample_rational


def test_half_binomial_values():
    assert half_binomial(0, 0) == 1
    assert half_binomial(1, 1) == Fraction(3, 2)
    assert half_binomial(1, 2) == Fraction(3, 8)
    assert half_binomial(2, 2) == Fraction(15, 8)
    # product formula evaluated independently
    m, k = 3, 4
    expected = Fraction(1)
    for j in range(k):
        expected *= Fraction(2 * m + 1 - 2 * j, 2)
    expected /= 24
    assert half_binomial(m, k) == expected


def test_rational_serialization():
    assert rational_to_str(Fraction(3, 2)) == "3/2"
    assert rational_to_str(Fraction(-7)) == "-7"
    assert rational_to_str(Fraction(0)) == "0"
    assert rational_from_str("3/2") == Fraction(3, 2)
    assert rational_from_str("-7") == -7


class TestRatFuncNormalization:
    field = FracField("t", QQ)

    def test_common_factor(self):
        r = ratfunc_normalize(self.field, {2: 1, 0: -1}, {1: 1, 0: -1})
        assert r.num == {1: Fraction(1), 0: Fraction(1)}
        assert r.den == {0: Fraction(1)}

    def test_monic_normalization(self):
        r = ratfunc_normalize(self.field, {0: 1}, {1: 2})
        assert r.num == {0: Fraction(1, 2)}
        assert r.den == {1: Fraction(1)}

    def test_zero_numerator(self):
        r = ratfunc_normalize(self.field, {}, {3: 1})
        assert not r
        assert r.den == {0: Fraction(1)}

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            ratfunc_normalize(self.field, {0: 1}, {})

    def test_idempotent(self):
        rng = fresh_rng(1)
        for _ in range(200):
            r = sample_ratfunc(rng, self.field)
            again = ratfunc_normalize(self.field, r.num, r.den)
            assert again.num == r.num and again.den == r.den


def test_pole_at_zero_predicate():
    field = FracField("t", QQ)
    t = field.gen()
    assert (1 / t).pole_at_zero()
    assert field.ratfunc({0: 1}, {2: 3}).pole_at_zero()
    assert not (1 / (t + 1)).pole_at_zero()
    assert not field.one.pole_at_zero()
    assert (1 / (t + 1)).pole_at(Fraction(-1))


def test_eval_at():
    field = FracField("t", QQ)
    t = field.gen()
    r = (t ** 2 - 1) / (t + 2)
    assert r.eval_at(Fraction(2)) == Fraction(3, 4)
    assert (1 / t).eval_at(Fraction(0)) is None


def test_field_axioms_rationals():
    rng = fresh_rng(2)
    assert check_field_axioms(sample_rational, Fraction(1), Fraction(0),
                              1000, rng) >= 1000


def test_field_axioms_ratfunc():
    field = FracField("t", QQ)
    rng = fresh_rng(3)
    assert check_field_axioms(lambda r: sample_ratfunc(r, field),
                              field.one, field.zero, 1000, rng) >= 1000


def test_nested_fraction_field():
    lam_field = FracField("lambda", QQ)
    mu_field = FracField("mu", lam_field)
    lam = mu_field.coerce(lam_field.gen())
    mu = mu_field.gen()
    expr = (lam + mu) * (lam - mu)
    assert expr == lam * lam - mu * mu
    assert (lam / mu) * mu == lam


def test_mixed_context_rejected():
    f1 = FracField("t", QQ)
    f2 = FracField("z", QQ)
    with pytest.raises(MixedContext):
        f1.gen() + f2.gen()


def test_json_roundtrip():
    field = FracField("t", QQ)
    t = field.gen()
    r = (3 * t ** 2 - 1) / (2 * t + 4)
    payload = field.scalar_to_json(r)
    assert payload["var"] == "t"
    assert field.scalar_from_json(payload) == r
    # exponents ascend
    assert [e for e, _ in payload["num"]] == sorted(
        e for e, _ in payload["num"])


def test_reciprocal_and_pow():
    field = FracField("t", QQ)
    t = field.gen()
    r = (t + 1) / (t ** 2 + 2)
    assert r * r.reciprocal() == field.one
    assert r ** 3 == r * r * r
    assert r ** 0 == field.one
    assert r ** -2 == (r.reciprocal()) ** 2
    with pytest.raises(ZeroDenominator):
        field.zero.reciprocal()


@settings(max_examples=60, deadline=None)
@given(st.integers(-40, 40), st.integers(1, 17), st.integers(-9, 9),
       st.integers(1, 7))
def test_hypothesis_ratfunc_add_commutes(a, b, c, d):
    field = FracField("t", QQ)
    t = field.gen()
    r1 = Fraction(a, b) + t * c
    r2 = t ** 2 * Fraction(c, d) + Fraction(b)
    assert r1 + r2 == r2 + r1
    assert r1 * r2 == r2 * r1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4))
def test_hypothesis_half_binomial_pascal_like(m, k):
    # (m+1/2 choose k+1) * (k+1) == (m+1/2 choose k) * (m + 1/2 - k)
    lhs = half_binomial(m, k + 1) * (k + 1)
    rhs = half_binomial(m, k) * (Fraction(2 * m + 1, 2) - k)
    assert lhs == rhs
