"""Expression grammar, error positions, and printer fixpoints."""

import json

import pytest

from wildlimits import (DegenerationParams, FracField, IllegalDivisor,
                        MapSyntaxError, MultiPoly, PolyMap, PolyRing, QQ,
                        ZeroDenominator, build_generators, emit, map_text,
                        parse_map, parse_poly)
from conftest import fresh_rng
from property_checks import check_parser_printer_fixpoint

Q_RING2 = PolyRing(("x", "y"), QQ)
Q_RING3 = PolyRing(("x", "y", "z"), QQ)
T_RING = PolyRing(("x", "y", "z"), FracField("t", QQ))


def test_elementary_map():
    expr = parse_map("(x+y^2, y)", Q_RING2)
    assert expr.map == PolyMap(Q_RING2, (Q_RING2.var("x") + Q_RING2.var("y") ** 2,
                                         Q_RING2.var("y")))
    assert expr.source == "(x+y^2, y)"


def test_family_factor_string_matches_generator():
    gen = build_generators(DegenerationParams(1))
    parsed = parse_map("(x - 3*y*z/(2*t) + z^3/(2*t^2), y - z^2/t, z)", T_RING)
    assert parsed.map == gen.G_inv


def test_syntax_error_position():
    with pytest.raises(MapSyntaxError) as err:
        parse_map("(x+y*, y)", Q_RING2)
    assert err.value.position == 5


def test_unknown_symbol():
    with pytest.raises(MapSyntaxError):
        parse_map("(x + w, y)", Q_RING2)


def test_component_count_mismatch():
    with pytest.raises(MapSyntaxError):
        parse_map("(x, y)", Q_RING3)


def test_illegal_divisor_map_variable():
    with pytest.raises(IllegalDivisor):
        parse_map("(x/y, y)", Q_RING2)
    with pytest.raises(IllegalDivisor):
        parse_map("(x/(2*y), y)", Q_RING2)


def test_divide_by_zero():
    with pytest.raises(ZeroDenominator):
        parse_map("(x/0, y)", Q_RING2)


def test_rational_and_indeterminate_divisors():
    from fractions import Fraction

    f = parse_map("(x/2, y)", Q_RING2).map
    assert f.components[0].terms == {(1, 0): Fraction(1, 2)}
    g = parse_map("(x + z^2/t, y, z)", T_RING).map
    field = T_RING.backend
    assert g.components[0].terms[(0, 0, 2)] == field.ratfunc({0: 1}, {1: 1})


def test_constant_composite_divisor_accepted():
    # any map-variable-free invertible divisor is legal
    g = parse_map("(x/(1 + t), y, z)", T_RING).map
    field = T_RING.backend
    t = field.gen()
    assert g.components[0].terms[(1, 0, 0)] == 1 / (1 + t)


def test_explicit_multiplication_required():
    with pytest.raises(MapSyntaxError):
        parse_map("(2x, y)", Q_RING2)


def test_power_of_parenthesized():
    p = parse_poly("(x + y)^3 - x^3 - y^3", Q_RING2)
    x, y = Q_RING2.gens()
    assert p == (x ** 2).mul(y).scal_mul(3) + x.mul(y ** 2).scal_mul(3)


def test_unary_minus():
    p = parse_poly("-x + -2*y", Q_RING2)
    x, y = Q_RING2.gens()
    assert p == -x - y.scal_mul(2)


def test_emit_identity_text():
    ident = PolyMap.identity(Q_RING3)
    assert emit(ident, "text") == "(x, y, z)"


def test_emit_json_schema():
    f = parse_map("(x + y^2, y)", Q_RING2).map
    payload = json.loads(emit(f, "json"))
    assert payload["vars"] == ["x", "y"]
    assert payload["components"][0]["terms"] == [[[0, 2], "1"], [[1, 0], "1"]]
    assert PolyMap.from_json(payload, Q_RING2) == f


def test_emit_latex_fractions():
    f = parse_map("(x + 3/2*y^2, y)", Q_RING2).map
    out = emit(f, "latex")
    assert "\\frac{3}{2}y^{2}" in out


def test_emit_latex_limit_display():
    from wildlimits import specialize_t, build_sigma

    limit = specialize_t(build_sigma(DegenerationParams(1)), 0)
    out = emit(limit, "latex")
    assert out == (
        "\\left(6x^{2}z^{7} - \\frac{9}{2}xy^{2}z^{6} "
        "+ \\frac{27}{32}y^{4}z^{5} - 3xyz^{3} + \\frac{9}{8}y^{3}z^{2} + x"
        ",\\; -4xz^{4} + \\frac{3}{2}y^{2}z^{3} + y,\\; z\\right)")


def test_parser_printer_fixpoint_bulk():
    assert check_parser_printer_fixpoint(100, fresh_rng(70)) >= 100


def test_whitespace_insensitive():
    a = parse_map("( x + y , y )", Q_RING2).map
    b = parse_map("(x+y,y)", Q_RING2).map
    assert a == b
