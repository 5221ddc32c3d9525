"""Plane factorization, length, and the tameness certifier over Q[z]."""

from fractions import Fraction

import pytest

from wildlimits import (AffineFactor, DegenerationParams, ElementaryFactor,
                        FracField, NotIntegralInput, NotPlaneAutomorphism,
                        PolyRing, QQ, build_sigma, compose, length, parse_map,
                        specialize_t, tame_check_over_kz, to_plane_over_last,
                        vdk_factor)
from conftest import fresh_rng
from property_checks import (check_coset_stability,
                             check_length_affine_invariance,
                             check_plane_factorization_roundtrip,
                             check_tame_words_certified)

RING_Q = PolyRing(("x", "y"), QQ)
FIELD_Z = FracField("z", QQ)
RING_Z = PolyRing(("x", "y"), FIELD_Z)


def nagata_plane():
    return parse_map(
        "(x - 2*y*(y^2 + z*x) - z*(y^2 + z*x)^2, y + z*(y^2 + z*x))",
        RING_Z).map


def sigma_limit_plane(m=1):
    limit = specialize_t(build_sigma(DegenerationParams(m)), 0)
    return to_plane_over_last(limit)


def test_vdk_two_elementaries():
    f = parse_map("(x + y^3, y + (x + y^3)^2)", RING_Q).map
    word = vdk_factor(f)
    kinds = [type(fac).__name__ for fac in word.factors]
    assert kinds == ["ElementaryFactor", "ElementaryFactor", "AffineFactor"]
    e1, e2, aff = word.factors
    assert e1.index == 2 and e1.poly == RING_Q.var("x") ** 2
    assert e2.index == 1 and e2.poly == RING_Q.var("y") ** 3
    assert aff.matrix == ((Fraction(1), Fraction(0)),
                          (Fraction(0), Fraction(1)))
    assert word.to_map(RING_Q) == f


def test_vdk_affine_input():
    f = parse_map("(2*x + y + 1, x - y)", RING_Q).map
    word = vdk_factor(f)
    assert len(word.factors) == 1
    assert isinstance(word.factors[0], AffineFactor)


def test_vdk_swap_tail():
    # one elementary subtraction, then the swap affine
    f = parse_map("(y + x^2, x)", RING_Q).map
    word = vdk_factor(f)
    assert [type(fac).__name__ for fac in word.factors] == \
        ["ElementaryFactor", "AffineFactor"]
    assert word.factors[-1].matrix == ((Fraction(0), Fraction(1)),
                                       (Fraction(1), Fraction(0)))


def test_vdk_rejects_non_automorphism():
    # Jacobian of (x + y^2, x) is -2y, so no polynomial inverse exists
    f = parse_map("(x + y^2, x)", RING_Q).map
    with pytest.raises(NotPlaneAutomorphism):
        vdk_factor(f)
    g = parse_map("(x + y^2, y + x^2)", RING_Q).map
    with pytest.raises(NotPlaneAutomorphism):
        vdk_factor(g)
    with pytest.raises(NotPlaneAutomorphism):
        vdk_factor(parse_map("(x, 3)", RING_Q).map)


def test_length_examples():
    affine = parse_map("(2*x + y, x - y + 1)", RING_Q).map
    assert length(affine) == 0
    single = parse_map("(x + y^2, y)", RING_Q).map
    assert length(single) == 1
    double = parse_map("(x + y^3, y + (x + y^3)^2)", RING_Q).map
    assert length(double) == 2


def test_length_merges_same_flag_runs():
    # (x + y^3 + y^2, y) factors into two index-1 elementaries: one block
    f = parse_map("(x + y^3 + y^2, y)", RING_Q).map
    word = vdk_factor(f)
    assert len([fac for fac in word.factors
                if isinstance(fac, ElementaryFactor)]) == 2
    assert length(f) == 1


def test_nagata_wild_certificate():
    verdict = tame_check_over_kz(nagata_plane())
    assert verdict.outcome == "wild"
    cert = verdict.certificate
    assert cert.step == 1
    assert cert.degrees == (4, 2)
    z = FIELD_Z.gen()
    assert cert.coefficient == -1 / z
    payload = verdict.to_json()
    assert payload["outcome"] == "wild"
    assert payload["certificate"]["step"] == 1


def test_sigma_limit_wild():
    verdict = tame_check_over_kz(sigma_limit_plane(1))
    assert verdict.outcome == "wild"
    # certificate denominator genuinely nonconstant in z
    den = verdict.certificate.coefficient.den
    assert max(den) >= 1


def test_tame_composition_of_elementaries():
    f = parse_map("(x + (z^2 + 1)*y^2, y)", RING_Z).map
    g = parse_map("(x, y + z*x^3)", RING_Z).map
    h = compose(f, g)
    verdict = tame_check_over_kz(h)
    assert verdict.is_tame
    assert verdict.word.to_map(RING_Z) == h


def test_non_integral_input_rejected():
    f = parse_map("(x/z, y)", RING_Z).map
    with pytest.raises(NotIntegralInput):
        tame_check_over_kz(f)


def test_nonconstant_jacobian_rejected():
    f = parse_map("(z*x, y)", RING_Z).map
    with pytest.raises(NotPlaneAutomorphism):
        tame_check_over_kz(f)


def test_unipotent_z_affine_is_tame():
    f = parse_map("(x + z^2*y, y)", RING_Z).map
    assert tame_check_over_kz(f).is_tame


def test_factorization_roundtrip_bulk():
    assert check_plane_factorization_roundtrip(100, fresh_rng(50)) >= 100


def test_tame_words_certified_bulk():
    assert check_tame_words_certified(50, fresh_rng(51)) >= 50


def test_coset_stability():
    wild = [nagata_plane(), sigma_limit_plane(1)]
    assert check_coset_stability(wild, 20, fresh_rng(52)) >= 20


def test_wild_certificates_non_integral_bulk():
    for f in (nagata_plane(), sigma_limit_plane(1), sigma_limit_plane(2)):
        verdict = tame_check_over_kz(f)
        assert verdict.outcome == "wild"
        assert max(verdict.certificate.coefficient.den) >= 1


def test_length_affine_invariance_bulk():
    assert check_length_affine_invariance(25, fresh_rng(53)) >= 25
