"""Quotient-ring tower: relations, unit inverses, ring laws."""

from fractions import Fraction

import pytest

from wildlimits import (IllegalDivisor, TowerRing, tower_make,
                        tower_unit_inverse)
from conftest import fresh_rng
from property_checks import check_ring_axioms, sample_tower


def test_tower_make_beta():
    assert tower_make(1).beta == Fraction(3, 8)
    assert tower_make(2).beta == Fraction(5, 16)
    with pytest.raises(ValueError):
        tower_make(0)


def test_relations_m1():
    ring = TowerRing(1)
    b, c, lam = ring.b(), ring.c(), ring.lam()
    assert b * b == ring.coerce(Fraction(-8, 3))
    assert c ** 3 == b * lam * Fraction(-1, 4)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_relations_reduce_exactly(m):
    ring = TowerRing(m)
    beta = ring.spec.beta
    b, c, lam = ring.b(), ring.c(), ring.lam()
    assert b ** (m + 1) == ring.coerce(-1 / beta)
    assert c ** (2 * m + 1) == b * lam * Fraction(-1, 4)
    # the defining normalization: -beta * b^(m+1) reduces to 1
    assert (b ** (m + 1)) * (-beta) == ring.one


@pytest.mark.parametrize("m", [1, 2, 3])
def test_unit_inverses(m):
    ring = TowerRing(m)
    b, c = ring.b(), ring.c()
    assert b * tower_unit_inverse("b", ring) == ring.one
    assert c * tower_unit_inverse("c", ring) == ring.one
    a = tower_unit_inverse("a_request", ring)
    assert a * c == ring.one


def test_c_inverse_closed_form_m1():
    ring = TowerRing(1)
    cinv = tower_unit_inverse("c", ring)
    lam = ring.base.gen()
    assert cinv.coeffs == {(1, 2): ring.base.coerce(Fraction(3, 2)) / lam}


def test_ring_axioms_randomized():
    for m in (1, 2):
        ring = TowerRing(m)
        rng = fresh_rng(10 + m)
        assert check_ring_axioms(lambda r: sample_tower(r, ring),
                                 ring.one, ring.zero, 300, rng) >= 300


def test_structural_equality_is_ring_equality():
    # eager reduction: same element built two ways has identical coefficients
    ring = TowerRing(1)
    b, c, lam = ring.b(), ring.c(), ring.lam()
    left = (b * c) * (b * c * c)          # b^2 c^3 -> (-8/3)(-lam b/4)
    right = ring.coerce(Fraction(2, 3)) * lam * b
    assert left.coeffs == right.coeffs


def test_is_base_and_division():
    ring = TowerRing(1)
    b = ring.b()
    assert ring.coerce(5).is_base()
    assert not b.is_base()
    assert (b / b) == ring.one
    with pytest.raises(IllegalDivisor):
        _ = ring.one / (b + ring.one)


def test_json_roundtrip():
    ring = TowerRing(2)
    rng = fresh_rng(12)
    for _ in range(25):
        s = sample_tower(rng, ring)
        assert ring.scalar_from_json(ring.scalar_to_json(s)) == s
