"""Quotient-ring tower Q(lambda)[b, c] / (b^{m+1} + 1/beta, c^{2m+1} + lambda*b/4).

Here beta = half_binomial(m, m+1) != 0.  Elements are reduced eagerly, so a
scalar is a sparse dict {(i, j): RatFunc(lambda)} with 0 <= i <= m and
0 <= j <= 2m, and structural equality coincides with ring equality.  The ring
is not assumed to be a field; only the closed-form unit inverses of b, c and
a := c^{-1} are provided.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IllegalDivisor, MixedContext, ZeroDenominator
from .scalars import QQ, FracField, RatFunc, half_binomial


@dataclass(frozen=True)
class TowerSpec:
    """Parameters of the tower: generator bound m and the constant beta."""

    m: int
    beta: Fraction

    @property
    def b_exponent(self) -> int:
        return self.m + 1

    @property
    def c_exponent(self) -> int:
        return 2 * self.m + 1


def tower_make(m: int) -> TowerSpec:
    """Tower spec with beta = (m + 1/2 choose m + 1); requires m >= 1."""
    if m < 1:
        raise ValueError("tower_make needs m >= 1")
    beta = half_binomial(m, m + 1)
    if not beta:
        raise ZeroDenominator("beta vanished; tower relations are degenerate")
    return TowerSpec(m=m, beta=beta)


class TowerScalar:
    """Reduced element sum coeffs[(i,j)] * b^i * c^j of a tower ring."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "TowerRing", coeffs: dict, _reduced=False):
        if not _reduced:
            coeffs = ring._reduce(coeffs)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("TowerScalar is immutable")

    def __bool__(self):
        return bool(self.coeffs)

    def is_base(self) -> bool:
        """True iff no residual b or c generator appears."""
        return all(k == (0, 0) for k in self.coeffs)

    def base_value(self) -> RatFunc:
        if not self.is_base():
            raise ValueError(f"{self!r} involves tower generators")
        return self.coeffs.get((0, 0), self.ring.base.zero)

    def _coerced(self, other):
        if isinstance(other, TowerScalar):
            if other.ring != self.ring:
                raise MixedContext("tower scalars from different towers")
            return other
        return self.ring.coerce(other)

    def __add__(self, other):
        try:
            other = self._coerced(other)
        except MixedContext:
            raise
        except Exception:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return TowerScalar(self.ring, out, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return TowerScalar(self.ring, {k: -v for k, v in self.coeffs.items()},
                           _reduced=True)

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
        out: dict = {}
        for (i1, j1), v1 in self.coeffs.items():
            for (i2, j2), v2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                p = v1 * v2
                s = out.get(k)
                if s is None:
                    if p:
                        out[k] = p
                else:
                    s = s + p
                    if s:
                        out[k] = s
                    else:
                        del out[k]
        return TowerScalar(self.ring, self.ring._reduce(out), _reduced=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            inv = self.ring.try_divisor_inverse(self)
            if inv is None:
                raise IllegalDivisor("negative power of a non-unit tower scalar")
            return inv ** (-k)
        result = self.ring.one
        sq = self
        while k:
            if k & 1:
                result = result * sq
            k >>= 1
            if k:
                sq = sq * sq
        return result

    def __truediv__(self, other):
        other = self._coerced(other)
        inv = self.ring.try_divisor_inverse(other)
        if inv is None:
            raise IllegalDivisor(f"cannot invert tower scalar {other!r}")
        return self * inv

    def __eq__(self, other):
        if not isinstance(other, TowerScalar) or other.ring != self.ring:
            try:
                other = self._coerced(other)
            except Exception:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.coeffs.items(),
                                             key=lambda kv: kv[0]))))

    def __repr__(self):
        return self.ring.scalar_text(self)


class TowerRing:
    """Backend descriptor for tower scalars over the base field Q(lambda)."""

    is_field = False

    def __init__(self, spec: TowerSpec | int):
        if isinstance(spec, int):
            spec = tower_make(spec)
        self.spec = spec
        self.base = FracField("lambda", QQ)
        lam = self.base.gen()
        # substitution rules applied during eager reduction
        self._b_red = self.base.coerce(-1 / spec.beta)      # b^{m+1} -> -1/beta
        self._c_red = -lam / 4                              # c^{2m+1} -> -(lambda/4) b

    def __eq__(self, other):
        return isinstance(other, TowerRing) and other.spec == self.spec

    def __hash__(self):
        return hash(("TowerRing", self.spec))

    def __repr__(self):
        return f"Tower(m={self.spec.m})"

    @property
    def name(self):
        return f"Q(lambda)[b,c]/m={self.spec.m}"

    def _reduce(self, coeffs: dict) -> dict:
        m = self.spec.m
        jcap, icap = 2 * m, m
        out: dict = {}
        stack = [(k, v) for k, v in coeffs.items() if v]
        while stack:
            (i, j), v = stack.pop()
            if j > jcap:
                stack.append(((i + 1, j - (2 * m + 1)), v * self._c_red))
                continue
            if i > icap:
                stack.append(((i - (m + 1), j), v * self._b_red))
                continue
            s = out.get((i, j))
            if s is None:
                out[(i, j)] = v
            else:
                s = s + v
                if s:
                    out[(i, j)] = s
                else:
                    del out[(i, j)]
        return out

    @property
    def zero(self):
        return TowerScalar(self, {}, _reduced=True)

    @property
    def one(self):
        return TowerScalar(self, {(0, 0): self.base.one}, _reduced=True)

    def lam(self) -> TowerScalar:
        return TowerScalar(self, {(0, 0): self.base.gen()}, _reduced=True)

    def b(self) -> TowerScalar:
        return TowerScalar(self, {(1, 0): self.base.one}, _reduced=True)

    def c(self) -> TowerScalar:
        return TowerScalar(self, {(0, 1): self.base.one}, _reduced=True)

    def coerce(self, x) -> TowerScalar:
        if isinstance(x, TowerScalar):
            if x.ring != self:
                raise MixedContext("tower scalar from a different tower")
            return x
        base_val = self.base.coerce(x)
        if not base_val:
            return self.zero
        return TowerScalar(self, {(0, 0): base_val}, _reduced=True)

    def inv(self, s):
        inv = self.try_divisor_inverse(self.coerce(s))
        if inv is None:
            raise IllegalDivisor(f"tower scalar {s!r} has no closed-form inverse")
        return inv

    def try_divisor_inverse(self, s):
        s = self.coerce(s)
        if not s:
            return None
        if len(s.coeffs) != 1:
            return None
        (i, j), v = next(iter(s.coeffs.items()))
        out = self.coerce(v.reciprocal())
        if i:
            out = out * tower_unit_inverse("b", self) ** i
        if j:
            out = out * tower_unit_inverse("c", self) ** j
        return out

    def gen_names(self) -> dict:
        return {"lambda": self.lam(), "b": self.b(), "c": self.c()}

    # -- serialization / printing ------------------------------------------

    def scalar_to_json(self, s: TowerScalar):
        return {
            "m": self.spec.m,
            "coeffs": [[i, j, self.base.scalar_to_json(v)]
                       for (i, j), v in sorted(s.coeffs.items())],
        }

    def scalar_from_json(self, obj) -> TowerScalar:
        if not isinstance(obj, dict) or obj.get("m") != self.spec.m:
            raise ValueError(f"bad tower payload for {self!r}: {obj!r}")
        coeffs = {(int(i), int(j)): self.base.scalar_from_json(v)
                  for i, j, v in obj["coeffs"]}
        return TowerScalar(self, coeffs)

    def scalar_sign_split(self, s: TowerScalar):
        if not s.coeffs:
            return 1, s
        lead = max(s.coeffs)
        sign, _ = self.base.scalar_sign_split(s.coeffs[lead])
        return (sign, -s) if sign < 0 else (1, s)

    def _entry_text(self, i, j, v, latex=False):
        if latex:
            coeff = self.base.scalar_latex(v)
            parts = [] if v == self.base.one and (i or j) else [coeff]
        else:
            coeff = self.base.scalar_text(v)
            parts = [] if v == self.base.one and (i or j) else [coeff]
        for gen, e in (("b", i), ("c", j)):
            if e == 1:
                parts.append(gen)
            elif e > 1:
                parts.append(f"{gen}^{{{e}}}" if latex else f"{gen}^{e}")
        joiner = "" if latex else "*"
        return joiner.join(parts) if parts else ("1" if not latex else "1")

    def scalar_text(self, s: TowerScalar) -> str:
        if not s.coeffs:
            return "0"
        pieces = []
        for (i, j) in sorted(s.coeffs, reverse=True):
            sign, mag = self.base.scalar_sign_split(s.coeffs[(i, j)])
            pieces.append((sign, self._entry_text(i, j, mag)))
        out = ("-" if pieces[0][0] < 0 else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += (" - " if sign < 0 else " + ") + body
        return out if len(pieces) == 1 and pieces[0][0] > 0 else f"({out})"

    def scalar_latex(self, s: TowerScalar) -> str:
        if not s.coeffs:
            return "0"
        out = ""
        for (i, j) in sorted(s.coeffs, reverse=True):
            sign, mag = self.base.scalar_sign_split(s.coeffs[(i, j)])
            body = self._entry_text(i, j, mag, latex=True)
            if not out:
                out = ("-" if sign < 0 else "") + body
            else:
                out += (" - " if sign < 0 else " + ") + body
        return out if len(s.coeffs) == 1 else f"\\left({out}\\right)"


def tower_unit_inverse(gen: str, ring: TowerRing) -> TowerScalar:
    """Closed-form inverse of a distinguished unit: b, c, or a (:= c^{-1}).

    b^{-1} = -beta * b^m and c^{-1} = (4*beta/lambda) * b^m * c^{2m}; both are
    certified by reduction of the product with the generator to 1.
    """
    m = ring.spec.m
    beta = ring.spec.beta
    if gen == "b":
        return TowerScalar(ring, {(m, 0): ring.base.coerce(-beta)}, _reduced=True)
    if gen in ("c", "a", "a_request"):
        lam = ring.base.gen()
        coeff = ring.base.coerce(4 * beta) / lam
        return TowerScalar(ring, {(m, 2 * m): coeff}, _reduced=True)
    raise ValueError(f"unknown tower unit {gen!r} (expected 'a', 'b' or 'c')")
