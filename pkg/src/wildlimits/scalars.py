"""Exact scalar backends for coefficient arithmetic.

Two families of scalars live here:

* plain rationals, represented directly by :class:`fractions.Fraction`
  (already reduced, positive denominator, arbitrary precision);
* normalized univariate rational functions over a named indeterminate,
  generic over any base field backend so that towers like Q(lambda)(mu)
  come for free.

Univariate polynomials are sparse dicts ``{exponent: coefficient}`` with no
zero coefficients stored; the zero polynomial is the empty dict.  A RatFunc
keeps a unique representative: denominator monic, coprime to the numerator.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import MixedContext, ZeroDenominator

Rational = Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


def half_binomial(m: int, k: int) -> Fraction:
    """Binomial coefficient (m + 1/2 choose k) as an exact rational.

    Equals the product of (m + 1/2 - j) for j < k, divided by k!; the empty
    product gives 1 for k = 0.
    """
    if m < 0 or k < 0:
        raise ValueError("half_binomial needs nonnegative arguments")
    num = _F1
    for j in range(k):
        num *= Fraction(2 * m + 1 - 2 * j, 2)
    return num / factorial(k)


def rational_to_str(q: Fraction) -> str:
    """Serialize a rational as "p/q", omitting the denominator when it is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# sparse univariate polynomial helpers (dict[int, scalar])
# ---------------------------------------------------------------------------

def u_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def u_neg(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


def u_mul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            p = c1 * c2
            s = get(e)
            if s is None:
                if p:
                    out[e] = p
            else:
                s = s + p
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def u_scal(a: dict, s) -> dict:
    if not s:
        return {}
    return {e: c * s for e, c in a.items()}


def u_pow(a: dict, k: int) -> dict:
    result = None
    sq = a
    while k:
        if k & 1:
            result = sq if result is None else u_mul(result, sq)
        k >>= 1
        if k:
            sq = u_mul(sq, sq)
    return {0: _F1} if result is None else result


def u_deg(a: dict) -> int:
    return max(a) if a else -1


def u_divmod(a: dict, b: dict, inv) -> tuple[dict, dict]:
    """Euclidean division; ``inv`` inverts scalars of the base field."""
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    bd = max(b)
    lc_inv = inv(b[bd])
    q: dict = {}
    r = dict(a)
    while r:
        rd = max(r)
        if rd < bd:
            break
        f = r[rd] * lc_inv
        q[rd - bd] = f
        sh = rd - bd
        for e, c in b.items():
            e2 = e + sh
            s = r.get(e2)
            p = f * c
            if s is None:
                if p:
                    r[e2] = -p
            else:
                s = s - p
                if s:
                    r[e2] = s
                else:
                    del r[e2]
    return q, r


def u_gcd(a: dict, b: dict, inv) -> dict:
    """Monic gcd by the Euclidean algorithm (monic remainders for stability)."""
    while b:
        _, r = u_divmod(a, b, inv)
        a, b = b, r
    if not a:
        return {}
    lc_inv = inv(a[max(a)])
    return {e: c * lc_inv for e, c in a.items()}


def u_xgcd(a: dict, b: dict, inv, one) -> tuple[dict, dict, dict]:
    """Extended Euclid: monic g with s*a + t*b = g."""
    r0, r1 = dict(a), dict(b)
    s0, s1 = {0: one}, {}
    t0, t1 = {}, {0: one}
    while r1:
        q, r = u_divmod(r0, r1, inv)
        r0, r1 = r1, r
        s0, s1 = s1, u_add(s0, u_neg(u_mul(q, s1)))
        t0, t1 = t1, u_add(t0, u_neg(u_mul(q, t1)))
    if not r0:
        return {}, s0, t0
    lc_inv = inv(r0[max(r0)])
    return ({e: c * lc_inv for e, c in r0.items()},
            {e: c * lc_inv for e, c in s0.items()},
            {e: c * lc_inv for e, c in t0.items()})


def u_eval(p: dict, x, zero):
    """Evaluate at a base scalar; cheap powers since exponents are small."""
    acc = zero
    for e, c in p.items():
        acc = acc + c * (x ** e) if e else acc + c
    return acc


# ---------------------------------------------------------------------------
# rational field backend
# ---------------------------------------------------------------------------

class RationalField:
    """Backend descriptor for Fraction scalars."""

    is_field = True
    name = "Q"

    @property
    def zero(self):
        return _F0

    @property
    def one(self):
        return _F1

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise MixedContext(f"cannot coerce {x!r} into Q")

    def inv(self, s):
        if not s:
            raise ZeroDenominator("division by zero in Q")
        return 1 / s

    def try_divisor_inverse(self, s):
        return 1 / s if s else None

    def gen_names(self) -> dict:
        return {}

    def scalar_to_json(self, s):
        return rational_to_str(s)

    def scalar_from_json(self, obj):
        if not isinstance(obj, str):
            raise ValueError(f"expected rational string, got {obj!r}")
        return Fraction(obj)

    def scalar_sign_split(self, s):
        return (-1, -s) if s < 0 else (1, s)

    def scalar_text(self, s) -> str:
        return rational_to_str(s)

    def scalar_latex(self, s) -> str:
        if s.denominator == 1:
            return str(s.numerator)
        sign = "-" if s < 0 else ""
        return f"{sign}\\frac{{{abs(s.numerator)}}}{{{s.denominator}}}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


# ---------------------------------------------------------------------------
# univariate rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Reduced rational function num/den over ``field.base`` in ``field.var``.

    Invariants: den is nonzero, monic and coprime to num; zero is {}/{0:1}.
    Instances are immutable; all operations return fresh values.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field: "FracField", num: dict, den: dict, _normalized=False):
        if not _normalized:
            num, den = _ratfunc_normalize(field, num, den)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    # -- predicates ---------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def den_is_one(self) -> bool:
        den = self.den
        return len(den) == 1 and 0 in den and den[0] == self.field.base.one

    def is_constant(self) -> bool:
        return self.den_is_one() and u_deg(self.num) <= 0

    def pole_at(self, point) -> bool:
        """True iff specialization at ``point`` is undefined."""
        zero = self.field.base.zero
        return not u_eval(self.den, point, zero)

    def pole_at_zero(self) -> bool:
        return 0 not in self.den

    def constant_value(self):
        """The base scalar of a constant; raises if nonconstant."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.get(0, self.field.base.zero)

    def eval_at(self, point):
        """Specialize the indeterminate at a base scalar; None on a pole."""
        base = self.field.base
        d = u_eval(self.den, point, base.zero)
        if not d:
            return None
        n = u_eval(self.num, point, base.zero)
        return n * base.inv(d)

    # -- arithmetic ---------------------------------------------------------

    def _coerced(self, other):
        if isinstance(other, RatFunc):
            if other.field != self.field:
                if other.field == self.field.base:
                    return self.field.coerce(other)
                raise MixedContext(
                    f"rational functions over {other.field!r} vs {self.field!r}")
            return other
        return self.field.coerce(other)

    def __add__(self, other):
        try:
            other = self._coerced(other)
        except MixedContext:
            raise
        except Exception:
            return NotImplemented
        f = self.field
        if self.den_is_one() and other.den_is_one():
            return RatFunc(f, u_add(self.num, other.num), self.den, _normalized=True)
        num = u_add(u_mul(self.num, other.den), u_mul(other.num, self.den))
        return RatFunc(f, num, u_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, u_neg(self.num), self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-self._coerced(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._coerced(other)
        except MixedContext:
            raise
        except Exception:
            return NotImplemented
        f = self.field
        num = u_mul(self.num, other.num)
        if self.den_is_one() and other.den_is_one():
            return RatFunc(f, num, self.den, _normalized=True)
        return RatFunc(f, num, u_mul(self.den, other.den))

    __rmul__ = __mul__

    def reciprocal(self):
        if not self.num:
            raise ZeroDenominator(f"reciprocal of zero in {self.field!r}")
        return RatFunc(self.field, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerced(other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        if k == 0:
            return self.field.one
        # coprimality and monicity survive powering, so skip normalization
        return RatFunc(self.field, u_pow(self.num, k), u_pow(self.den, k),
                       _normalized=True)

    def __eq__(self, other):
        if not isinstance(other, RatFunc) or other.field != self.field:
            try:
                other = self._coerced(other)
            except Exception:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.num.items())),
                     tuple(sorted(self.den.items()))))

    def __repr__(self):
        return self.field.scalar_text(self)


def _ratfunc_normalize(field: "FracField", num: dict, den: dict) -> tuple[dict, dict]:
    base = field.base
    num = {e: c for e, c in num.items() if c}
    den = {e: c for e, c in den.items() if c}
    if not den:
        raise ZeroDenominator(f"zero denominator over {field!r}")
    one = base.one
    if not num:
        return {}, {0: one}
    if len(den) == 1:
        k, c = next(iter(den.items()))
        if k:
            v = min(min(num), k)
            if v:
                num = {e - v: s for e, s in num.items()}
                k -= v
        if c == one:
            return num, {k: one}
        cinv = base.inv(c)
        return {e: s * cinv for e, s in num.items()}, {k: one}
    g = u_gcd(num, den, base.inv)
    if u_deg(g) > 0:
        num, _ = u_divmod(num, g, base.inv)
        den, _ = u_divmod(den, g, base.inv)
    lc = den[max(den)]
    if lc != one:
        lc_inv = base.inv(lc)
        num = {e: c * lc_inv for e, c in num.items()}
        den = {e: c * lc_inv for e, c in den.items()}
    return num, den


class FracField:
    """Field of rational functions in one named indeterminate over a base field."""

    is_field = True

    def __init__(self, var: str, base=QQ):
        self.var = var
        self.base = base

    def __eq__(self, other):
        return (isinstance(other, FracField) and other.var == self.var
                and other.base == self.base)

    def __hash__(self):
        return hash(("FracField", self.var, self.base))

    def __repr__(self):
        return f"{self.base!r}({self.var})"

    @property
    def name(self):
        return f"{self.base.name}({self.var})"

    @property
    def zero(self):
        return RatFunc(self, {}, {0: self.base.one}, _normalized=True)

    @property
    def one(self):
        return RatFunc(self, {0: self.base.one}, {0: self.base.one}, _normalized=True)

    def gen(self) -> RatFunc:
        return RatFunc(self, {1: self.base.one}, {0: self.base.one}, _normalized=True)

    def poly(self, coeffs: dict) -> RatFunc:
        """Polynomial (denominator 1) from an exponent->coefficient mapping."""
        num = {int(e): self.base.coerce(c) for e, c in coeffs.items()}
        return RatFunc(self, num, {0: self.base.one})

    def ratfunc(self, num: dict, den: dict) -> RatFunc:
        """Normalized quotient of two polynomials given as mappings."""
        return RatFunc(self,
                       {int(e): self.base.coerce(c) for e, c in num.items()},
                       {int(e): self.base.coerce(c) for e, c in den.items()})

    def coerce(self, x) -> RatFunc:
        if isinstance(x, RatFunc):
            if x.field == self:
                return x
            if x.field == self.base:
                return RatFunc(self, {0: x}, {0: self.base.one}, _normalized=True)
            raise MixedContext(f"cannot coerce {x!r} into {self!r}")
        c = self.base.coerce(x)
        if not c:
            return self.zero
        return RatFunc(self, {0: c}, {0: self.base.one}, _normalized=True)

    def inv(self, s):
        return self.coerce(s).reciprocal()

    def try_divisor_inverse(self, s):
        s = self.coerce(s)
        return s.reciprocal() if s else None

    def gen_names(self) -> dict:
        names = {self.var: self.gen()}
        for name, scalar in self.base.gen_names().items():
            if name not in names:
                names[name] = self.coerce(scalar)
        return names

    # -- serialization / printing ------------------------------------------

    def scalar_to_json(self, s: RatFunc):
        b = self.base
        return {
            "var": self.var,
            "num": [[e, b.scalar_to_json(c)] for e, c in sorted(s.num.items())],
            "den": [[e, b.scalar_to_json(c)] for e, c in sorted(s.den.items())],
        }

    def scalar_from_json(self, obj) -> RatFunc:
        if not isinstance(obj, dict) or obj.get("var") != self.var:
            raise ValueError(f"bad rational-function payload for {self!r}: {obj!r}")
        b = self.base
        num = {int(e): b.scalar_from_json(c) for e, c in obj["num"]}
        den = {int(e): b.scalar_from_json(c) for e, c in obj["den"]}
        return RatFunc(self, num, den)

    def scalar_sign_split(self, s: RatFunc):
        if not s.num:
            return 1, s
        sign, _ = self.base.scalar_sign_split(s.num[max(s.num)])
        return (sign, -s) if sign < 0 else (1, s)

    def _poly_text(self, p: dict) -> tuple[str, bool]:
        """Render a univariate polynomial; second value: is a bare single factor."""
        if not p:
            return "0", True
        base = self.base
        pieces = []
        for e in sorted(p, reverse=True):
            sign, mag = base.scalar_sign_split(p[e])
            mag_txt = base.scalar_text(mag)
            if "+" in mag_txt or (mag_txt.count("-") - mag_txt.count("(-")) > 0:
                mag_txt = f"({mag_txt})"
            if e == 0:
                body = mag_txt
            else:
                v = self.var if e == 1 else f"{self.var}^{e}"
                body = v if mag == base.one else f"{mag_txt}*{v}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign < 0 else "") + first_body
        for sign, body in pieces[1:]:
            out += (" - " if sign < 0 else " + ") + body
        single = len(pieces) == 1 and first_sign > 0
        return out, single

    def scalar_text(self, s: RatFunc) -> str:
        num_txt, num_single = self._poly_text(s.num)
        if s.den_is_one():
            return num_txt if num_single else f"({num_txt})"
        den_txt, den_single = self._poly_text(s.den)
        left = num_txt if num_single else f"({num_txt})"
        # bare denominators reparse only when they are a clean var power
        den_ok = den_single and "*" not in den_txt and "/" not in den_txt
        right = den_txt if den_ok else f"({den_txt})"
        return f"{left}/{right}"

    def _poly_latex(self, p: dict) -> str:
        if not p:
            return "0"
        base = self.base
        var = "\\lambda" if self.var == "lambda" else ("\\mu" if self.var == "mu" else self.var)
        out = ""
        for e in sorted(p, reverse=True):
            sign, mag = base.scalar_sign_split(p[e])
            mag_txt = base.scalar_latex(mag)
            if e == 0:
                body = mag_txt
            else:
                v = var if e == 1 else f"{var}^{{{e}}}"
                body = v if mag == base.one else f"{mag_txt}{v}"
            if not out:
                out = ("-" if sign < 0 else "") + body
            else:
                out += (" - " if sign < 0 else " + ") + body
        return out

    def scalar_latex(self, s: RatFunc) -> str:
        if s.den_is_one():
            txt = self._poly_latex(s.num)
            return f"\\left({txt}\\right)" if len(s.num) > 1 else txt
        return f"\\frac{{{self._poly_latex(s.num)}}}{{{self._poly_latex(s.den)}}}"


def ratfunc_normalize(field: FracField, num: dict, den: dict) -> RatFunc:
    """Unique reduced representative of num/den with monic denominator."""
    return field.ratfunc(num, den)
