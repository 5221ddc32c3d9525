"""Degree and factor-count bounds for tame automorphisms of 3-space.

Closed formulas in the input degree d: a tame map of degree at most d reduces
to an affine one in at most 3d-3 elementary-style reduction steps, the
polynomial used by an elementary reduction has degree at most 2d(d+1), and a
general reduction step needs elementaries of degree at most 4d(2d+1).  The
derived factor count 9(3d-3)+1 comes from expanding each reduction into at
most one triangular and two affine coordinate moves, each triangular into one
affine and two elementaries, plus one terminal affine.

The lower-bound evaluator implements the two-sided inequality for a
*-reduced pair (f1, f2) with deg f1 = d1 < d2 = deg f2:

    deg P(f1, f2) >= max(q N + d2 r, q1 N + d1 r1)

where p = d1/gcd, s = d2/gcd, deg_{x2} P = p q + r (0 <= r < p),
deg_{x1} P = s q1 + r1 (0 <= r1 < s) and
N = d1 d2 / gcd - d1 - d2 + deg[f1, f2] >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvalidStarReducedData


@dataclass(frozen=True)
class BoundReport:
    d: int
    reduction_count: int
    elem_degree_bound: int
    general_degree_bound: int
    factor_count: int

    def to_json(self):
        return {"d": self.d,
                "reduction_count": self.reduction_count,
                "elem_degree_bound": self.elem_degree_bound,
                "general_degree_bound": self.general_degree_bound,
                "factor_count": self.factor_count}


def bound_report(d: int) -> BoundReport:
    """Evaluate all degree-d bounds; entries are monotone in d."""
    if d < 1:
        raise ValueError("bound_report needs d >= 1")
    reductions = 3 * d - 3
    return BoundReport(
        d=d,
        reduction_count=reductions,
        elem_degree_bound=2 * d * (d + 1),
        general_degree_bound=4 * d * (2 * d + 1),
        factor_count=9 * reductions + 1,
    )


@dataclass(frozen=True)
class SUBoundInput:
    """Degree bookkeeping of a *-reduced pair and a polynomial P(x1, x2)."""

    d1: int
    d2: int
    degP_x1: int
    degP_x2: int
    degBracket: int

    def __post_init__(self):
        if not (0 < self.d1 < self.d2):
            raise InvalidStarReducedData(
                f"need 0 < d1 < d2, got ({self.d1}, {self.d2})")
        if self.degP_x1 < 0 or self.degP_x2 < 0:
            raise InvalidStarReducedData("partial degrees must be nonnegative")
        if self.degBracket < 1:
            raise InvalidStarReducedData("deg[f1,f2] must be positive")
        if self.N < 2:
            raise InvalidStarReducedData(f"N = {self.N} < 2")

    @property
    def g(self) -> int:
        return gcd(self.d1, self.d2)

    @property
    def p(self) -> int:
        return self.d1 // self.g

    @property
    def s(self) -> int:
        return self.d2 // self.g

    @property
    def N(self) -> int:
        return self.d1 * self.d2 // self.g - self.d1 - self.d2 + self.degBracket

    @property
    def qr(self) -> tuple:
        return divmod(self.degP_x2, self.p)

    @property
    def q1r1(self) -> tuple:
        return divmod(self.degP_x1, self.s)


def su_inequality_bound(data: SUBoundInput) -> int:
    """Lower bound for deg P(f1, f2): max(q N + d2 r, q1 N + d1 r1)."""
    q, r = data.qr
    q1, r1 = data.q1r1
    return max(q * data.N + data.d2 * r, q1 * data.N + data.d1 * r1)
