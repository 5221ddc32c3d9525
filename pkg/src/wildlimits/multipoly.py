"""Sparse multivariate polynomials over an exchangeable scalar backend.

Terms map exponent tuples (one nonnegative integer per declared variable) to
nonzero scalars; the zero polynomial stores no terms.  Canonical term order
for printing and serialization is graded lexicographic, leading term first.
Map variables and coefficient indeterminates are strictly separated: degrees
count exponents of declared variables only, while t, z or lambda appearing as
coefficients live inside the scalar backend.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import MixedContext, ZeroPolynomial

NEG_INF = float("-inf")


def grlex_key(exps: tuple) -> tuple:
    return (sum(exps), exps)


class PolyRing:
    """A polynomial ring: ordered variable names plus a scalar backend."""

    __slots__ = ("vars", "backend")

    def __init__(self, variables: Sequence[str], backend):
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        self.backend = backend

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.vars == self.vars
                and other.backend == self.backend)

    def __hash__(self):
        return hash((self.vars, self.backend))

    def __repr__(self):
        return f"PolyRing({','.join(self.vars)}; {self.backend!r})"

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def zero_exp(self) -> tuple:
        return (0,) * len(self.vars)

    def var(self, name: str) -> "MultiPoly":
        idx = self.vars.index(name)
        e = [0] * len(self.vars)
        e[idx] = 1
        return MultiPoly(self, {tuple(e): self.backend.one})

    def gens(self) -> tuple:
        return tuple(self.var(v) for v in self.vars)

    def const(self, x) -> "MultiPoly":
        c = self.backend.coerce(x)
        if not c:
            return MultiPoly(self, {})
        return MultiPoly(self, {self.zero_exp(): c})

    @property
    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    @property
    def one(self) -> "MultiPoly":
        return self.const(1)

    def monomial(self, exps: Sequence[int], coeff=1) -> "MultiPoly":
        e = tuple(int(k) for k in exps)
        if len(e) != len(self.vars) or any(k < 0 for k in e):
            raise ValueError(f"bad exponent vector {exps!r} for {self!r}")
        c = self.backend.coerce(coeff)
        return MultiPoly(self, {e: c} if c else {})

    def from_terms(self, terms) -> "MultiPoly":
        items = terms.items() if isinstance(terms, dict) else terms
        out = {}
        for exps, coeff in items:
            e = tuple(int(k) for k in exps)
            if len(e) != len(self.vars):
                raise ValueError(f"bad exponent vector {e} for {self!r}")
            c = self.backend.coerce(coeff)
            if not c:
                continue
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly(self, out)

    def _var_indices(self, in_vars) -> tuple:
        if in_vars is None:
            return tuple(range(len(self.vars)))
        idx = []
        for name in in_vars:
            if name not in self.vars:
                raise MixedContext(f"variable {name!r} not in {self!r}")
            idx.append(self.vars.index(name))
        return tuple(sorted(set(idx)))


class MultiPoly:
    """Immutable sparse polynomial attached to its ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # -- basics --------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return other.ring == self.ring and other.terms == self.terms
        try:
            return self == self.ring.const(other)
        except Exception:
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms))))

    def sorted_terms(self) -> list:
        """Terms in graded-lex order, leading term first."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]),
                      reverse=True)

    def __repr__(self):
        if not self.terms:
            return "<poly 0>"
        parts = []
        for e, c in self.sorted_terms()[:6]:
            mono = "*".join(f"{v}^{k}" for v, k in zip(self.ring.vars, e) if k)
            parts.append(f"({c!r}){('*' + mono) if mono else ''}")
        more = " + ..." if len(self.terms) > 6 else ""
        return f"<poly {' + '.join(parts)}{more}>"

    def constant_term(self):
        return self.terms.get(self.ring.zero_exp(), self.ring.backend.zero)

    def _check_ring(self, other: "MultiPoly"):
        if other.ring != self.ring:
            raise MixedContext(f"operands in {self.ring!r} vs {other.ring!r}")

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = self.ring.const(other)
        self._check_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scal_mul(self, s) -> "MultiPoly":
        s = self.ring.backend.coerce(s)
        if not s:
            return MultiPoly(self.ring, {})
        return MultiPoly(self.ring, {e: c * s for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scal_mul(other)
        return self.mul(other)

    def __rmul__(self, other):
        return self.scal_mul(other)

    def mul(self, other: "MultiPoly", max_degree=None) -> "MultiPoly":
        """Exact product, optionally discarding terms above ``max_degree``."""
        self._check_ring(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        if max_degree is None:
            for e1, c1 in a.items():
                for e2, c2 in b.items():
                    e = tuple(map(sum, zip(e1, e2)))
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
        else:
            b_sorted = sorted(b.items(), key=lambda kv: sum(kv[0]))
            b_degs = [sum(kv[0]) for kv in b_sorted]
            for e1, c1 in a.items():
                d1 = sum(e1)
                for (e2, c2), d2 in zip(b_sorted, b_degs):
                    if d1 + d2 > max_degree:
                        break
                    e = tuple(map(sum, zip(e1, e2)))
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
        return MultiPoly(self.ring, out)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = None
        sq = self
        while k:
            if k & 1:
                result = sq if result is None else result.mul(sq)
            k >>= 1
            if k:
                sq = sq.mul(sq)
        return self.ring.one if result is None else result

    # -- degrees and forms -----------------------------------------------------

    def degree(self, in_vars=None):
        """Total degree counting only ``in_vars`` exponents; -inf for zero."""
        if not self.terms:
            return NEG_INF
        idx = self.ring._var_indices(in_vars)
        return max(sum(e[i] for i in idx) for e in self.terms)

    def leading_form(self, in_vars=None) -> "MultiPoly":
        """Sum of the terms of maximal ``in_vars`` degree."""
        if not self.terms:
            raise ZeroPolynomial("leading form of the zero polynomial")
        idx = self.ring._var_indices(in_vars)
        degs = {e: sum(e[i] for i in idx) for e in self.terms}
        top = max(degs.values())
        return MultiPoly(self.ring,
                         {e: c for e, c in self.terms.items() if degs[e] == top})

    def diff(self, var: str) -> "MultiPoly":
        i = self.ring.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if not k:
                continue
            e2 = e[:i] + (k - 1,) + e[i + 1:]
            p = c * Fraction(k)
            s = out.get(e2)
            if s is None:
                out[e2] = p
            else:
                s = s + p
                if s:
                    out[e2] = s
                else:
                    del out[e2]
        return MultiPoly(self.ring, out)

    # -- substitution ----------------------------------------------------------

    def substitute(self, images: Sequence["MultiPoly"], max_degree=None) -> "MultiPoly":
        """Ring-homomorphic substitution of one image per declared variable.

        Images must all live in one common ring over the same backend as this
        polynomial (their variables may differ).  Per-variable power tables are
        cached, and factors are folded smallest-first.
        """
        ring = self.ring
        if len(images) != len(ring.vars):
            raise MixedContext(
                f"{len(images)} images for {len(ring.vars)} variables")
        target = images[0].ring
        for img in images:
            if img.ring != target:
                raise MixedContext("images live in different rings")
        if target.backend != ring.backend:
            raise MixedContext(
                f"image backend {target.backend!r} differs from {ring.backend!r}")
        if not self.terms:
            return MultiPoly(target, {})
        maxexp = [0] * len(ring.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k > maxexp[i]:
                    maxexp[i] = k
        tables: list = [None] * len(ring.vars)
        for i, top in enumerate(maxexp):
            if top > 0:
                pw = [target.one, images[i]]
                for _ in range(top - 1):
                    pw.append(pw[-1].mul(images[i], max_degree))
                tables[i] = pw
        acc: dict = {}
        zexp = target.zero_exp()
        for e, c in self.terms.items():
            factors = [tables[i][k] for i, k in enumerate(e) if k]
            if not factors:
                s = acc.get(zexp)
                if s is None:
                    acc[zexp] = c
                else:
                    s = s + c
                    if s:
                        acc[zexp] = s
                    else:
                        del acc[zexp]
                continue
            factors.sort(key=lambda p: len(p.terms))
            prod = factors[0]
            for f in factors[1:]:
                prod = prod.mul(f, max_degree)
            for pe, pc in prod.terms.items():
                p = c * pc
                s = acc.get(pe)
                if s is None:
                    if p:
                        acc[pe] = p
                else:
                    s = s + p
                    if s:
                        acc[pe] = s
                    else:
                        del acc[pe]
        return MultiPoly(target, acc)

    # -- conversions -------------------------------------------------------------

    def map_scalars(self, func, new_ring: PolyRing) -> "MultiPoly":
        """Apply ``func`` to every coefficient, rebuilding over ``new_ring``."""
        out = {}
        for e, c in self.terms.items():
            v = func(c)
            if v:
                out[e] = v
        return MultiPoly(new_ring, out)

    def to_json(self):
        backend = self.ring.backend
        return {
            "vars": list(self.ring.vars),
            "terms": [[list(e), backend.scalar_to_json(c)]
                      for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj, ring: PolyRing) -> "MultiPoly":
        if list(obj.get("vars", [])) != list(ring.vars):
            raise ValueError(f"variable mismatch: {obj.get('vars')} vs {ring.vars}")
        backend = ring.backend
        return ring.from_terms(
            [(tuple(e), backend.scalar_from_json(c)) for e, c in obj["terms"]])


def poly_arith(op: str, p: MultiPoly, q) -> MultiPoly:
    """Dispatch table for the four ring operations (add, sub, mul, pow)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "pow":
        return p ** q
    raise ValueError(f"unknown operation {op!r}")
