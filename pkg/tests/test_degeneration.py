"""The degenerating family, its limit, tower conjugation, and density."""

from fractions import Fraction

import pytest

from wildlimits import (DegenerationParams, FactoredWord, FracField, PolyMap,
                        PolyRing, QQ, build_alpha, build_generators,
                        build_sigma, compose, correction_map, exp_lnd,
                        half_binomial, inverse, is_inverse_pair, make_delta,
                        parse_map, pm_poly, specialize_t, tower_unit_inverse,
                        verify_assertions, wild_dense_family)
from conftest import fresh_rng
from wildlimits.sampling import random_word

T_RING = PolyRing(("x", "y", "z"), FracField("t", QQ))
Q_RING = PolyRing(("x", "y", "z"), QQ)

# first-factor displays of the m = 1 family
GINV_TEXT = "(x - 3*y*z/(2*t) + z^3/(2*t^2), y - z^2/t, z)"
F_TEXT = "(x, y, z + t^3*x^2 - t^2*y^3)"
G_TEXT = "(x + 3*y*z/(2*t) + z^3/t^2, y + z^2/t, z)"


def test_pm_poly_values():
    u_ring = PolyRing(("U",), QQ)
    assert pm_poly(1, u_ring) == u_ring.from_terms(
        {(0,): 1, (1,): Fraction(3, 2)})
    assert pm_poly(2, u_ring) == u_ring.from_terms(
        {(0,): 1, (1,): Fraction(5, 2), (2,): Fraction(15, 8)})
    for m in range(1, 6):
        assert pm_poly(m, u_ring).terms[(0,)] == 1


def test_generators_match_displays():
    gen = build_generators(DegenerationParams(1))
    assert gen.G_inv == parse_map(GINV_TEXT, T_RING).map
    assert gen.F == parse_map(F_TEXT, T_RING).map
    assert gen.G == parse_map(G_TEXT, T_RING).map


def test_generator_inverse_verified():
    gen = build_generators(DegenerationParams(2))
    ident = PolyMap.identity(gen.ring)
    assert compose(gen.G, gen.G_inv) == ident
    assert compose(gen.G_inv, gen.G) == ident


def test_sigma_matches_display_composition():
    sigma = build_sigma(DegenerationParams(1))
    displayed = compose(parse_map(GINV_TEXT, T_RING).map,
                        compose(parse_map(F_TEXT, T_RING).map,
                                parse_map(G_TEXT, T_RING).map))
    assert sigma == displayed


@pytest.mark.parametrize("m", [1, 2])
def test_sigma_coefficients_polynomial_in_t(m):
    sigma = build_sigma(DegenerationParams(m))
    for comp in sigma.components:
        for c in comp.terms.values():
            assert c.den_is_one()


def test_sigma_jacobian():
    sigma = build_sigma(DegenerationParams(1))
    from wildlimits import jacobian_det

    assert jacobian_det(sigma) == sigma.ring.one


def test_sigma_word_attached_and_invertible():
    sigma = build_sigma(DegenerationParams(1))
    assert sigma.word is not None and len(sigma.word) == 3
    inv = inverse(sigma)
    assert is_inverse_pair(sigma, inv)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_verify_assertions_all_pass(m):
    report = verify_assertions(DegenerationParams(m))
    assert report.m == m
    assert len(report.assertions) == 6
    for a in report.assertions:
        assert a.passed, f"{a.id}: {a.witness}"
    payload = report.to_json()
    assert payload["m"] == m
    assert all(entry["pass"] for entry in payload["assertions"])
    assert isinstance(payload["elapsed_ms"], int)


def test_limit_closed_forms_m1():
    limit = specialize_t(build_sigma(DegenerationParams(1)), 0)
    expanded = parse_map(
        "(x + 9/8*y^3*z^2 - 3*x*y*z^3 + 27/32*y^4*z^5 - 9/2*x*y^2*z^6 "
        "+ 6*x^2*z^7, y + 3/2*y^2*z^3 - 4*x*z^4, z)", Q_RING).map
    factored = parse_map(
        "(x + 3/4*z^2*y*(3/2*y^2 - 4*x*z) + 3/8*z^5*(3/2*y^2 - 4*x*z)^2, "
        "y + z^3*(3/2*y^2 - 4*x*z), z)", Q_RING).map
    assert limit == expanded
    assert limit == factored


def test_limit_y_component_general_m():
    for m in (1, 2):
        limit = specialize_t(build_sigma(DegenerationParams(m)), 0)
        x, y, z = Q_RING.gens()
        beta = half_binomial(m, m + 1)
        expected = y - (x.mul(z) - (y ** (m + 1)).scal_mul(beta)) \
            .mul(z ** (2 * m + 1)).scal_mul(4)
        assert limit.components[1] == expected
        assert limit.components[2] == z


def test_build_alpha_m1():
    params = DegenerationParams(1)
    result = build_alpha(params)
    ring = result.alpha.ring
    tower = result.tower
    x, y, z = ring.gens()
    lam = tower.lam()
    expected_y = y + (x.mul(z) + y ** 2).mul(z ** 3).scal_mul(lam)
    assert result.alpha.components[1] == expected_y
    assert result.alpha.components[2] == z
    for comp in result.alpha.components[1:]:
        assert all(v.is_base() for v in comp.terms.values())
    # the 4-variable family fixes t and specializes to the limit
    assert result.alpha_t.components[3] == result.alpha_t.ring.var("t")


def test_alpha_matches_explicit_conjugation_m1():
    """Cross-check the per-term scaling against honest composition."""
    params = DegenerationParams(1)
    result = build_alpha(params)
    tower = result.tower
    ring = result.alpha.ring
    limit = specialize_t(build_sigma(params), 0)
    lifted = limit.map_scalars(tower.coerce, ring)
    x, y, z = ring.gens()
    a = tower_unit_inverse("a_request", tower)
    b, c = tower.b(), tower.c()
    psi = PolyMap(ring, (x.scal_mul(a), y.scal_mul(b), z.scal_mul(c)))
    ainv, binv, cinv = (c, tower_unit_inverse("b", tower),
                        tower_unit_inverse("c", tower))
    psi_inv = PolyMap(ring, (x.scal_mul(ainv), y.scal_mul(binv),
                             z.scal_mul(cinv)))
    assert compose(psi, psi_inv) == PolyMap.identity(ring)
    assert compose(psi_inv, compose(lifted, psi)) == result.alpha


def test_correction_map_m1():
    params = DegenerationParams(1)
    result = build_alpha(params)
    corr = correction_map(result, params)
    tower = result.tower
    assert corr.d.is_base()
    assert corr.d == tower.one
    assert not corr.correction  # zero correction polynomial for m = 1
    phi = exp_lnd(make_delta(1, 3, result.alpha.ring), tower.lam())
    assert compose(corr.as_map, result.alpha) == phi
    assert corr.exp_target == phi


def test_alpha_t_has_polynomial_t_dependence():
    result = build_alpha(DegenerationParams(1))
    # encoded with t as a genuine (polynomial) map variable: nothing to check
    # beyond exponents being nonnegative, which the ring enforces; spot-check
    # that some positive t-power actually appears
    assert any(e[3] > 0 for comp in result.alpha_t.components[:3]
               for e in comp.terms)


def test_wild_dense_family_identity_word():
    ident = FactoredWord([])
    res = wild_dense_family(ident, m=1, n=1)
    assert res.limit_matches
    assert res.limit == PolyMap.identity(Q_RING)
    nagata = exp_lnd(make_delta(1, 1, Q_RING), Fraction(1))
    assert res.at(1) == nagata


def test_wild_dense_family_random_words():
    rng = fresh_rng(60)
    for _ in range(5):
        word = random_word(Q_RING, rng, max_factors=3, degree_cap=8)
        res = wild_dense_family(word, m=1, n=3)
        assert res.limit_matches
        assert res.limit == word.to_map(Q_RING)


def test_wild_dense_family_member_at_one():
    rng = fresh_rng(61)
    word = random_word(Q_RING, rng, max_factors=2, degree_cap=5)
    res = wild_dense_family(word, m=1, n=1)
    nagata = exp_lnd(make_delta(1, 1, Q_RING), Fraction(1))
    assert res.at(1) == compose(nagata, word.to_map(Q_RING))
