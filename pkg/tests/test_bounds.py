"""Bound calculators: closed formulas and the *-reduced inequality."""

import pytest

from wildlimits import (InvalidStarReducedData, SUBoundInput, bound_report,
                        su_inequality_bound)


def test_bound_report_values():
    r1 = bound_report(1)
    assert (r1.reduction_count, r1.elem_degree_bound,
            r1.general_degree_bound) == (0, 4, 12)
    r2 = bound_report(2)
    assert (r2.reduction_count, r2.elem_degree_bound,
            r2.general_degree_bound) == (3, 12, 40)
    r3 = bound_report(3)
    assert (r3.reduction_count, r3.elem_degree_bound,
            r3.general_degree_bound) == (6, 24, 84)
    assert r2.factor_count == 9 * 3 + 1


def test_bound_report_closed_formulas_and_monotone():
    prev = None
    for d in range(1, 101):
        r = bound_report(d)
        assert r.reduction_count == 3 * d - 3
        assert r.elem_degree_bound == 2 * d * (d + 1)
        assert r.general_degree_bound == 4 * d * (2 * d + 1)
        assert r.factor_count == 9 * (3 * d - 3) + 1
        if prev is not None:
            assert r.reduction_count >= prev.reduction_count
            assert r.elem_degree_bound >= prev.elem_degree_bound
            assert r.general_degree_bound >= prev.general_degree_bound
            assert r.factor_count >= prev.factor_count
        prev = r
    with pytest.raises(ValueError):
        bound_report(0)


def test_su_worked_example():
    data = SUBoundInput(d1=2, d2=3, degP_x1=4, degP_x2=5, degBracket=2)
    assert data.N == 3
    assert data.qr == (2, 1)
    assert data.q1r1 == (1, 1)
    assert su_inequality_bound(data) == 9


def test_su_zero_degrees():
    data = SUBoundInput(d1=2, d2=3, degP_x1=0, degP_x2=0, degBracket=2)
    assert su_inequality_bound(data) == 0


def test_su_remainder_empty_when_p_is_one():
    data = SUBoundInput(d1=2, d2=4, degP_x1=3, degP_x2=5, degBracket=2)
    assert data.p == 1
    assert data.qr[1] == 0


def test_su_invalid_inputs():
    with pytest.raises(InvalidStarReducedData):
        SUBoundInput(d1=3, d2=2, degP_x1=1, degP_x2=1, degBracket=2)
    with pytest.raises(InvalidStarReducedData):
        SUBoundInput(d1=2, d2=3, degP_x1=1, degP_x2=1, degBracket=0)
    with pytest.raises(InvalidStarReducedData):
        # N = 2 - 1 - 2 + 1 = 0 < 2
        SUBoundInput(d1=1, d2=2, degP_x1=0, degP_x2=0, degBracket=1)


def test_su_dominates_weak_consequences():
    count = 0
    for d1 in range(1, 7):
        for d2 in range(d1 + 1, 9):
            for bracket in range(2, 5):
                data0 = SUBoundInput(d1=d1, d2=d2, degP_x1=0, degP_x2=0,
                                     degBracket=bracket)
                if data0.N < 2:
                    continue
                for px1 in range(0, 8):
                    for px2 in range(0, 8):
                        data = SUBoundInput(d1=d1, d2=d2, degP_x1=px1,
                                            degP_x2=px2, degBracket=bracket)
                        bound = su_inequality_bound(data)
                        q, _ = data.qr
                        q1, _ = data.q1r1
                        assert bound >= q and bound >= q1
                        count += 1
    assert count >= 10_000


def test_su_partial_degree_bound_consistency():
    """If the lower bound allows deg P(f1,f2) <= d, the partial degrees obey
    deg_{x_i} P <= d(d+1), by exhaustive search over small grids."""
    from math import gcd

    checked = 0
    for d in range(2, 7):
        for d1 in range(1, d + 1):
            for d2 in range(d1 + 1, d + 1):
                p = d1 // gcd(d1, d2)
                s = d2 // gcd(d1, d2)
                for bracket in range(2, 4):
                    for q in range(0, d + 2):
                        for r in range(0, p):
                            for q1 in range(0, d + 2):
                                for r1 in range(0, s):
                                    try:
                                        data = SUBoundInput(
                                            d1=d1, d2=d2,
                                            degP_x1=s * q1 + r1,
                                            degP_x2=p * q + r,
                                            degBracket=bracket)
                                    except InvalidStarReducedData:
                                        continue
                                    if su_inequality_bound(data) <= d:
                                        assert data.degP_x2 <= d * (d + 1)
                                        assert data.degP_x1 <= d * (d + 1)
                                        checked += 1
    assert checked > 100
