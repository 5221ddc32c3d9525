"""Plane automorphism factorization and the tameness certifier over Q[z].

vdk_factor peels a plane map into elementary factors and one terminal affine
factor by repeatedly cancelling the leading form of the higher-degree
component against a power of the other one; failure of the divisibility or
proportionality requirement certifies that the input is not a plane
automorphism at all.  Over the field Q(z) the same reduction decides
membership in the tame subgroup over Q[z] by integrality tracking along the
canonical (deterministic) reduction path: the verdict is Tame iff every
reduction coefficient and the terminal affine stay in Q[z], and the first
non-integral coefficient is returned as a wildness certificate.  A Tame
verdict always exhibits an integral word whose recomposition is checked
exactly, so it is unconditionally correct; Wild verdicts are relative to the
canonical path of the underlying reduction algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotIntegralInput, NotPlaneAutomorphism
from .maps import (AffineFactor, ElementaryFactor, FactoredWord, PolyMap,
                   compose, jacobian_det, matrix_det, matrix_inverse,
                   word_to_json)
from .multipoly import MultiPoly, grlex_key
from .scalars import QQ, FracField, RatFunc


@dataclass(frozen=True)
class WildCertificate:
    """First non-integral datum met during the reduction over Q(z)."""

    step: int
    coefficient: RatFunc
    degrees: tuple

    def to_json(self):
        field = self.coefficient.field
        return {"step": self.step,
                "c": field.scalar_to_json(self.coefficient),
                "degs": list(self.degrees)}


@dataclass(frozen=True)
class TamenessVerdict:
    outcome: str  # "tame" | "wild"
    word: Optional[FactoredWord] = None
    certificate: Optional[WildCertificate] = None

    @property
    def is_tame(self) -> bool:
        return self.outcome == "tame"

    def to_json(self, backend=None):
        if self.is_tame:
            if backend is None:
                backend = next(
                    (fac.poly.ring.backend for fac in self.word.factors
                     if isinstance(fac, ElementaryFactor)), None)
            return {"outcome": "tame",
                    "word": word_to_json(self.word, backend)}
        return {"outcome": "wild", "certificate": self.certificate.to_json()}


def _require_plane(f: PolyMap):
    if f.ring.nvars != 2:
        raise NotPlaneAutomorphism(
            f"plane operations need 2 components, got {f.ring.nvars}")


def vdk_factor(f: PolyMap, _trace: Optional[list] = None) -> FactoredWord:
    """Factor a plane automorphism into elementary factors and one affine.

    Deterministic reduction path: always reduce the component of higher
    degree; on ties reduce the first one.  Each step requires the degree
    ratio r to be a positive integer and the leading form of the high
    component to be a scalar multiple of the r-th power of the other leading
    form; any failure certifies the input is not an automorphism.
    """
    _require_plane(f)
    ring = f.ring
    backend = ring.backend
    comps = list(f.components)
    for comp in comps:
        if comp.degree() < 1:
            raise NotPlaneAutomorphism("constant component")
    factors = []
    step = 0
    while True:
        degs = [int(c.degree()) for c in comps]
        if max(degs) <= 1:
            break
        hi = 0 if degs[0] >= degs[1] else 1
        lo = 1 - hi
        dh, dl = degs[hi], degs[lo]
        if dl < 1:
            raise NotPlaneAutomorphism(
                "higher component cannot be reduced against a constant")
        if dh % dl:
            raise NotPlaneAutomorphism(
                f"degree ratio {dh}/{dl} is not an integer")
        r = dh // dl
        lead_hi = comps[hi].leading_form()
        lead_lo_r = comps[lo].leading_form() ** r
        top_exp, top_coeff = max(lead_lo_r.terms.items(),
                                 key=lambda kv: grlex_key(kv[0]))
        hi_coeff = lead_hi.terms.get(top_exp)
        if hi_coeff is None:
            raise NotPlaneAutomorphism("leading forms are not proportional")
        c = hi_coeff * backend.inv(top_coeff)
        if lead_hi != lead_lo_r.scal_mul(c):
            raise NotPlaneAutomorphism("leading forms are not proportional")
        step += 1
        if _trace is not None:
            _trace.append((step, c, (degs[0], degs[1])))
        exps = [0, 0]
        exps[lo] = r
        factors.append(ElementaryFactor(hi + 1, ring.monomial(exps, c)))
        comps[hi] = comps[hi] - (comps[lo] ** r).scal_mul(c)
        if comps[hi].degree() >= dh:
            raise NotPlaneAutomorphism("reduction failed to lower the degree")
        if comps[hi].degree() < 1:
            raise NotPlaneAutomorphism("component collapsed to a constant")
    unit_exps = [(1, 0), (0, 1)]
    matrix = tuple(tuple(comp.terms.get(e, backend.zero) for e in unit_exps)
                   for comp in comps)
    translation = tuple(comp.constant_term() for comp in comps)
    if not matrix_det(matrix, backend):
        raise NotPlaneAutomorphism("terminal affine part is singular")
    factors.append(AffineFactor(matrix, translation))
    return FactoredWord(factors, represents=f)


def _affine_in_flag(amap: PolyMap, flag: int) -> bool:
    """Affine map lies in the triangular subgroup of the given flag (1 or 2)."""
    other = 0 if flag == 1 else 1
    comp = amap.components[1 if flag == 1 else 0]
    return all(e[other] == 0 for e in comp.terms)


def length(f: PolyMap) -> int:
    """Minimum number of non-affine triangular blocks for a plane automorphism.

    Obtained from vdk_factor by merging adjacent factors that lie in a common
    triangular subgroup through intervening affine factors belonging to it.
    """
    word = vdk_factor(f)
    ring = f.ring
    count = 0
    last_flag = None
    aff_acc = None
    for factor in word.factors:
        blockish = (isinstance(factor, ElementaryFactor)
                    and factor.poly.degree() >= 2)
        if blockish:
            flag = factor.index
            merges = (last_flag == flag
                      and (aff_acc is None or _affine_in_flag(aff_acc, flag)))
            if not merges:
                count += 1
            last_flag = flag
            aff_acc = None
        else:
            fmap = factor.to_map(ring)
            aff_acc = fmap if aff_acc is None else compose(aff_acc, fmap)
    return count


def _scalar_is_rational_constant(s: RatFunc) -> bool:
    return s.is_constant() and bool(s)


# -- integral/junction splitting of affine pieces over Q(z) -----------------

def _primitive_scale(field: FracField, v1: RatFunc, v2: RatFunc) -> RatFunc:
    """lam in K* such that lam*(v1, v2) is integral with coprime entries."""
    from .scalars import u_divmod, u_gcd, u_mul

    inv = field.base.inv
    g_d = u_gcd(v1.den, v2.den, inv)
    lcm, _ = u_divmod(u_mul(v1.den, v2.den), g_d, inv)
    a1 = u_mul(v1.num, u_divmod(lcm, v1.den, inv)[0])
    a2 = u_mul(v2.num, u_divmod(lcm, v2.den, inv)[0])
    g = u_gcd(a1, a2, inv)
    return RatFunc(field, lcm, g)


def _affine_split(field: FracField, linear, translation, upper: bool):
    """Factor an invertible affine over K as U o J.

    U is integral with determinant in Q* and zero translation; J is a
    triangular affine junction over K (upper or lower per the flag).  Always
    possible over the PID Q[z]: scale one column of the linear part to a
    primitive integral vector, fix the determinant with the other column's
    scale, and clear its denominators with a Bezout combination of the
    primitive column.
    """
    from .scalars import u_mul, u_xgcd

    (l11, l12), (l21, l22) = linear
    det = l11 * l22 - l12 * l21
    if not det:
        raise NotPlaneAutomorphism("terminal affine part is singular")
    base_cols = ((l11, l21), (l12, l22))
    keep = 0 if upper else 1  # column scaled to a primitive integral vector
    other = 1 - keep
    lam = _primitive_scale(field, *base_cols[keep])
    w = (lam * base_cols[keep][0], lam * base_cols[keep][1])
    sign = 1 if keep == 0 else -1
    mu = (lam * det * sign).reciprocal()
    v = (mu * base_cols[other][0], mu * base_cols[other][1])
    # find nu with v + nu*w integral: cross-determinant is +-1/q in Q*
    _, s, t = u_xgcd(w[0].num, w[1].num, field.base.inv, field.base.one)
    nu = -(field.ratfunc(s, {0: 1}) * v[0] + field.ratfunc(t, {0: 1}) * v[1])
    u_other = (v[0] + nu * w[0], v[1] + nu * w[1])
    cols = [None, None]
    cols[keep] = w
    cols[other] = u_other
    umat = ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))
    for row in umat:
        for entry in row:
            if not entry.den_is_one():
                raise NotPlaneAutomorphism(
                    "internal error: integral split produced a denominator")
    uinv = matrix_inverse(umat, field)
    j_linear = tuple(
        tuple(sum((uinv[i][k] * linear[k][j] for k in range(2)),
                  field.zero) for j in range(2)) for i in range(2))
    j_translation = tuple(
        sum((uinv[i][k] * translation[k] for k in range(2)), field.zero)
        for i in range(2))
    off = j_linear[1][0] if upper else j_linear[0][1]
    if off:
        raise NotPlaneAutomorphism(
            "internal error: junction is not triangular")
    return umat, j_linear, j_translation


def _linear_data(comps, backend):
    unit_exps = [(1, 0), (0, 1)]
    matrix = tuple(tuple(comp.terms.get(e, backend.zero) for e in unit_exps)
                   for comp in comps)
    translation = tuple(comp.constant_term() for comp in comps)
    return matrix, translation


def _compose_affine(a, b):
    """(La, ta) o (Lb, tb) as affine data: (La Lb, La tb + ta)."""
    (a11, a12), (a21, a22) = a[0]
    (b11, b12), (b21, b22) = b[0]
    linear = ((a11 * b11 + a12 * b21, a11 * b12 + a12 * b22),
              (a21 * b11 + a22 * b21, a21 * b12 + a22 * b22))
    translation = (a11 * b[1][0] + a12 * b[1][1] + a[1][0],
                   a21 * b[1][0] + a22 * b[1][1] + a[1][1])
    return linear, translation


def tame_check_over_kz(f: PolyMap) -> TamenessVerdict:
    """Decide tameness over Q[z] of a plane map with coefficients in Q[z].

    Runs the reduction over the fraction field Q(z) with integrality
    tracking.  Linear-level steps (degree ties and the terminal part) are
    affine junction data: they are accumulated and re-split into an integral
    affine factor times a triangular junction pushed into the remaining map,
    which is always possible over the PID Q[z].  A genuine block step whose
    coefficient has a nontrivial denominator is the wildness certificate.
    Tame verdicts always carry the integral word, verified by exact
    recomposition.
    """
    _require_plane(f)
    field = f.ring.backend
    if not isinstance(field, FracField) or field.base != QQ:
        raise NotIntegralInput(
            f"tameness certification needs coefficients in Q[{field!r}]")
    for comp in f.components:
        for c in comp.terms.values():
            if not c.den_is_one():
                raise NotIntegralInput(
                    f"coefficient {c!r} is not a polynomial in {field.var}")
    jd = jacobian_det(f)
    if jd.degree() != 0:
        raise NotPlaneAutomorphism(
            "Jacobian determinant is not a nonzero constant")
    if not _scalar_is_rational_constant(jd.constant_term()):
        raise NotPlaneAutomorphism(
            f"Jacobian determinant {jd.constant_term()!r} is not a nonzero "
            f"rational")

    ring = f.ring
    ident2 = ((field.one, field.zero), (field.zero, field.one))
    comps = list(f.components)
    for comp in comps:
        if comp.degree() < 1:
            raise NotPlaneAutomorphism("constant component")
    factors: list = []
    pending = None  # affine (linear, translation) over K absorbed so far
    step = 0

    def apply_affine(linear, translation):
        new0 = comps[0].scal_mul(linear[0][0]) + comps[1].scal_mul(
            linear[0][1]) + ring.const(translation[0])
        new1 = comps[0].scal_mul(linear[1][0]) + comps[1].scal_mul(
            linear[1][1]) + ring.const(translation[1])
        comps[0], comps[1] = new0, new1

    while True:
        degs = [int(c.degree()) for c in comps]
        if max(degs) <= 1:
            terminal = _linear_data(comps, field)
            if pending is not None:
                terminal = _compose_affine(pending, terminal)
            matrix, translation = terminal
            entries = [v for row in matrix for v in row] + list(translation)
            bad = next((v for v in entries if not v.den_is_one()), None)
            if bad is not None:
                return TamenessVerdict("wild", certificate=WildCertificate(
                    step + 1, bad, (degs[0], degs[1])))
            det = matrix_det(matrix, field)
            if not _scalar_is_rational_constant(det):
                return TamenessVerdict("wild", certificate=WildCertificate(
                    step + 1, det.reciprocal(), (degs[0], degs[1])))
            factors.append(AffineFactor(matrix, translation))
            break

        hi = 0 if degs[0] >= degs[1] else 1
        lo = 1 - hi
        dh, dl = degs[hi], degs[lo]
        if dl < 1:
            raise NotPlaneAutomorphism(
                "higher component cannot be reduced against a constant")
        if dh % dl:
            raise NotPlaneAutomorphism(
                f"degree ratio {dh}/{dl} is not an integer")
        r = dh // dl
        lead_hi = comps[hi].leading_form()
        lead_lo_r = comps[lo].leading_form() ** r
        top_exp, top_coeff = max(lead_lo_r.terms.items(),
                                 key=lambda kv: grlex_key(kv[0]))
        hi_coeff = lead_hi.terms.get(top_exp)
        if hi_coeff is None or lead_hi != lead_lo_r.scal_mul(
                hi_coeff * field.inv(top_coeff)):
            raise NotPlaneAutomorphism("leading forms are not proportional")
        c = hi_coeff * field.inv(top_coeff)
        step += 1

        if r == 1:
            # affine-level move: absorb instead of emitting
            a_step = [[field.one, field.zero], [field.zero, field.one]]
            a_step[hi][lo] = c
            a_step = (tuple(map(tuple, a_step)), (field.zero, field.zero))
            pending = a_step if pending is None else _compose_affine(
                pending, a_step)
            comps[hi] = comps[hi] - comps[lo].scal_mul(c)
            if comps[hi].degree() >= dh or comps[hi].degree() < 0:
                raise NotPlaneAutomorphism("reduction failed to lower the "
                                           "degree")
            continue

        if pending is not None:
            # emit the integral part, push the junction into the live map
            umat, j_linear, j_translation = _affine_split(
                field, pending[0], pending[1], upper=(hi == 0))
            if umat != ident2:
                factors.append(AffineFactor(
                    umat, (field.zero, field.zero)))
            apply_affine(j_linear, j_translation)
            pending = None
            step -= 1  # the block step re-runs on the twisted components
            continue

        if not c.den_is_one():
            return TamenessVerdict("wild", certificate=WildCertificate(
                step, c, (degs[0], degs[1])))
        exps = [0, 0]
        exps[lo] = r
        factors.append(ElementaryFactor(hi + 1, ring.monomial(exps, c)))
        comps[hi] = comps[hi] - (comps[lo] ** r).scal_mul(c)
        if comps[hi].degree() >= dh:
            raise NotPlaneAutomorphism("reduction failed to lower the degree")
        if comps[hi].degree() < 1:
            raise NotPlaneAutomorphism("component collapsed to a constant")

    word = FactoredWord(factors, represents=f)
    return TamenessVerdict("tame", word=word)


def embed_plane_in_space(f: PolyMap, ring3) -> PolyMap:
    """Embed (f1, f2) over Q[z]-style coefficients as (f1, f2, z) in 3-space."""
    from .maps import from_plane_over_last

    return from_plane_over_last(f, ring3)
