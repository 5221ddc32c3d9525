"""Degenerating families of tame automorphisms and their wild limits.

For n = 2m+1 the triangular generators

    F_t = (x, y, z + t^(m+1) (t x^2 - y^(2m+1)))
    G_t = (x + sum_k C(m+1/2, k) t^(k-m-1) y^k z^(2m+1-2k), y + z^2/t, z)

conjugate into the family sigma_t = G_t^{-1} o F_t o G_t, whose coefficients
are certified to be polynomials in t even though the factors have poles.
Putting t = 0 yields the wild limit automorphism; conjugating by the diagonal
map (a x, b y, c z) over the quotient-ring tower and correcting by a
triangular map recovers the exponential exp(lam * delta) of the associated
locally nilpotent derivation as a limit of tame maps.  The reverse direction
(every tame map is a limit of wild ones) is realized by t -> exp(t*delta) o
sigma.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .errors import (NotPolynomialInT, ResidualTowerGenerators,
                     ShapeViolation, WildlimitsError)
from .lnd import exp_lnd, make_delta
from .maps import (ElementaryFactor, FactoredWord, PolyMap, TriangularFactor,
                   compose, inverse, is_inverse_pair, specialize_t)
from .multipoly import MultiPoly, PolyRing
from .scalars import QQ, FracField, half_binomial
from .tower import TowerRing, TowerScalar, tower_make, tower_unit_inverse


@dataclass(frozen=True)
class DegenerationParams:
    """Family parameter m >= 1; the derivation exponent n is fixed at 2m+1."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("DegenerationParams needs m >= 1")

    @property
    def n(self) -> int:
        return 2 * self.m + 1


@dataclass(frozen=True)
class Generators:
    """The triangular generators over Q(t) together with their factors."""

    F: PolyMap
    G: PolyMap
    G_inv: PolyMap
    F_factor: ElementaryFactor
    G_factor: TriangularFactor
    G_inv_factor: TriangularFactor

    @property
    def ring(self) -> PolyRing:
        return self.F.ring


def pm_poly(m: int, ring: Optional[PolyRing] = None) -> MultiPoly:
    """Truncation at order m of the binomial series of (1+U)^(m+1/2)."""
    if m < 1:
        raise ValueError("pm_poly needs m >= 1")
    if ring is None:
        ring = PolyRing(("U",), QQ)
    return ring.from_terms({(k,): half_binomial(m, k) for k in range(m + 1)})


def build_generators(params: DegenerationParams) -> Generators:
    """Construct F_t, G_t and the closed form of G_t^{-1} over Q(t).

    The closed-form inverse is cross-checked against triangular back
    substitution, and G o G^{-1} = id is verified exactly on construction.
    """
    m = params.m
    tfield = FracField("t", QQ)
    ring = PolyRing(("x", "y", "z"), tfield)
    x, y, z = ring.gens()
    t = tfield.gen()

    shift = (x ** 2).scal_mul(t ** (m + 2)) - (y ** (2 * m + 1)).scal_mul(t ** (m + 1))
    f_map = PolyMap(ring, (x, y, z + shift))
    f_factor = ElementaryFactor(3, shift)

    gx = x
    for k in range(m + 1):
        coeff = tfield.ratfunc({0: half_binomial(m, k)}, {m + 1 - k: 1})
        gx = gx + (y ** k).mul(z ** (2 * m + 1 - 2 * k)).scal_mul(coeff)
    gy = y + (z ** 2).scal_mul(t.reciprocal())
    g_map = PolyMap(ring, (gx, gy, z))
    g_factor = TriangularFactor(g_map.components)

    w = y.scal_mul(t) - z ** 2
    s = ring.zero
    for k in range(m + 1):
        s = s + (w ** k).mul(z ** (2 * m + 1 - 2 * k)).scal_mul(half_binomial(m, k))
    ginv_x = x - s.scal_mul(tfield.ratfunc({0: 1}, {m + 1: 1}))
    ginv_map = PolyMap(ring, (ginv_x, y - (z ** 2).scal_mul(t.reciprocal()), z))
    ginv_factor = TriangularFactor(ginv_map.components)

    if g_factor.inverse_factor(ring).components != ginv_map.components:
        raise WildlimitsError("closed-form inverse disagrees with back substitution")
    ident = PolyMap.identity(ring)
    if compose(g_map, ginv_map) != ident or compose(ginv_map, g_map) != ident:
        raise WildlimitsError("G o G^{-1} failed to recompose to the identity")

    return Generators(F=f_map, G=g_map, G_inv=ginv_map, F_factor=f_factor,
                      G_factor=g_factor, G_inv_factor=ginv_factor)


def _certify_polynomial_in_t(f: PolyMap, what: str) -> None:
    for ci, comp in enumerate(f.components):
        for e, c in comp.terms.items():
            if not c.den_is_one():
                mono = "*".join(f"{v}^{k}" for v, k in zip(f.ring.vars, e) if k)
                raise NotPolynomialInT(
                    f"{what}: component {ci + 1}, monomial {mono or '1'} has "
                    f"coefficient {c!r} with a nontrivial denominator")


def build_sigma(params: DegenerationParams,
                generators: Optional[Generators] = None) -> PolyMap:
    """The degenerating family sigma_t = G_t^{-1} o F_t o G_t over Q(t).

    Every coefficient is certified to be a polynomial in t (a failure would
    be an implementation bug, not a property of the construction); the
    three-factor word is attached for exact inversion and specialization.
    """
    gen = generators or build_generators(params)
    sigma = compose(gen.G_inv, compose(gen.F, gen.G))
    _certify_polynomial_in_t(sigma, "sigma_t")
    word = FactoredWord([gen.G_inv_factor, gen.F_factor, gen.G_factor])
    return sigma.with_word(word)


# ---------------------------------------------------------------------------
# verification report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AssertionResult:
    id: str
    passed: bool
    witness: Optional[str] = None

    def to_json(self):
        return {"id": self.id, "pass": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class VerificationReport:
    m: int
    assertions: tuple
    elapsed_ms: int

    @property
    def passes(self) -> bool:
        return all(a.passed for a in self.assertions)

    def to_json(self):
        return {"m": self.m,
                "assertions": [a.to_json() for a in self.assertions],
                "elapsed_ms": self.elapsed_ms}


def _first_offender(f: PolyMap):
    for ci, comp in enumerate(f.components):
        for e, c in comp.terms.items():
            if not c.den_is_one():
                mono = "*".join(f"{v}^{k}" for v, k in zip(f.ring.vars, e) if k)
                return f"component {ci + 1}, monomial {mono or '1'}: {c!r}"
    return None


def verify_assertions(params: DegenerationParams) -> VerificationReport:
    """Run the six exact checks on the family and its limit for this m."""
    start = time.perf_counter()
    m = params.m
    results = []

    gen = build_generators(params)
    sigma = compose(gen.G_inv, compose(gen.F, gen.G))

    offender = _first_offender(sigma)
    results.append(AssertionResult("components-integral", offender is None,
                                   offender))
    integral = offender is None

    qring = PolyRing(("x", "y", "z"), QQ)
    x, y, z = qring.gens()
    limit = None
    if integral:
        word = FactoredWord([gen.G_inv_factor, gen.F_factor, gen.G_factor])
        limit = specialize_t(sigma.with_word(word), 0)

    if limit is not None:
        ok = limit.components[2] == z
        results.append(AssertionResult(
            "z-component-constant-mod-t", ok,
            None if ok else f"limit z-component: {limit.components[2]!r}"))
        beta = half_binomial(m, m + 1)
        expected_y = y - (x.mul(z) - (y ** (m + 1)).scal_mul(beta)) \
            .mul(z ** (2 * m + 1)).scal_mul(4)
        ok = limit.components[1] == expected_y
        results.append(AssertionResult(
            "y-limit-closed-form", ok,
            None if ok else f"limit y-component: {limit.components[1]!r}"))
    else:
        results.append(AssertionResult("z-component-constant-mod-t", False,
                                       "blocked: components not integral"))
        results.append(AssertionResult("y-limit-closed-form", False,
                                       "blocked: components not integral"))

    uring = PolyRing(("U",), QQ)
    u = uring.var("U")
    pm = pm_poly(m, uring)
    beta = half_binomial(m, m + 1)
    binom_pow = (uring.one + u) ** (2 * m + 1)
    diff = pm.mul(pm) - binom_pow
    low = [e for (e,) in diff.terms if e < m + 1]
    results.append(AssertionResult(
        "pm-square-congruence", not low,
        None if not low else f"offending exponents {sorted(low)}"))
    refined = binom_pow - (u ** (m + 1)).scal_mul(2 * beta)
    diff2 = pm.mul(pm) - refined
    low2 = [e for (e,) in diff2.terms if e < m + 2]
    results.append(AssertionResult(
        "pm-square-refined-congruence", not low2,
        None if not low2 else f"offending exponents {sorted(low2)}"))

    if limit is not None and limit.components[2] == z:
        inv = inverse(limit)
        ok = is_inverse_pair(limit, inv)
        results.append(AssertionResult(
            "limit-automorphism", ok,
            None if ok else "limit times its inverse is not the identity"))
    else:
        results.append(AssertionResult("limit-automorphism", False,
                                       "blocked: no z-fixing limit"))

    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return VerificationReport(m=m, assertions=tuple(results),
                              elapsed_ms=elapsed_ms)


# ---------------------------------------------------------------------------
# conjugation over the tower and the correction map
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlphaResult:
    """Conjugated family over the tower: with t as a fourth map variable, and
    its limit at t = 0 in three variables."""

    alpha_t: PolyMap
    alpha: PolyMap
    tower: TowerRing

    @property
    def ring(self) -> PolyRing:
        return self.alpha.ring


def _conjugate_by_diagonal(sigma: PolyMap, tower: TowerRing) -> tuple:
    """Per-term scaling realizing Psi^{-1} o sigma o Psi with Psi = (ax,by,cz).

    Returns the 4-variable map (with t adjoined) and its t = 0 limit; sigma
    must already be certified to have Q[t] coefficients.
    """
    ring4 = PolyRing(("x", "y", "z", "t"), tower)
    ring3 = PolyRing(("x", "y", "z"), tower)
    b = tower.b()
    c = tower.c()
    binv = tower_unit_inverse("b", tower)
    cinv = tower_unit_inverse("c", tower)
    a = cinv
    outer = (c, binv, a)  # inverses of the diagonal entries (a, b, c)

    maxe = [0, 0, 0]
    for comp in sigma.components:
        for e in comp.terms:
            for i in range(3):
                if e[i] > maxe[i]:
                    maxe[i] = e[i]
    pows = []
    for unit, top in zip((a, b, c), maxe):
        table = [tower.one]
        for _ in range(top):
            table.append(table[-1] * unit)
        pows.append(table)

    comps4 = []
    comps3 = []
    for i, comp in enumerate(sigma.components):
        out4: dict = {}
        for (ex, ey, ez), coeff in comp.terms.items():
            scale = outer[i] * pows[0][ex] * pows[1][ey] * pows[2][ez]
            for td, frac in coeff.num.items():
                val = scale * frac
                if not val:
                    continue
                key4 = (ex, ey, ez, td)
                if key4 in out4:
                    s = out4[key4] + val
                    if s:
                        out4[key4] = s
                    else:
                        del out4[key4]
                else:
                    out4[key4] = val
        comps4.append(MultiPoly(ring4, out4))
        comps3.append(MultiPoly(
            ring3, {e[:3]: v for e, v in out4.items() if e[3] == 0}))
    comps4.append(ring4.var("t"))
    return PolyMap(ring4, comps4), PolyMap(ring3, comps3)


def build_alpha(params: DegenerationParams,
                sigma: Optional[PolyMap] = None) -> AlphaResult:
    """Conjugate the family by the diagonal tower map and take its limit.

    Asserts that the last two limit components need no tower generators and
    equal y + lam (xz + y^(m+1)) z^(2m+1) and z exactly.
    """
    if sigma is None:
        sigma = build_sigma(params)
    _certify_polynomial_in_t(sigma, "sigma_t")
    tower = TowerRing(tower_make(params.m))
    alpha_t, alpha = _conjugate_by_diagonal(sigma, tower)

    for ci, comp in enumerate(alpha.components[1:], start=2):
        for e, v in comp.terms.items():
            if not v.is_base():
                raise ResidualTowerGenerators(
                    f"alpha component {ci}, exponent {e}: coefficient {v!r} "
                    f"still involves tower generators")
    ring3 = alpha.ring
    x, y, z = ring3.gens()
    lam = tower.lam()
    m = params.m
    expected_y = y + (x.mul(z) + y ** (m + 1)).mul(z ** (2 * m + 1)).scal_mul(lam)
    if alpha.components[1] != expected_y or alpha.components[2] != z:
        raise WildlimitsError(
            "conjugated limit does not match the expected closed form")
    return AlphaResult(alpha_t=alpha_t, alpha=alpha, tower=tower)


@dataclass(frozen=True)
class CorrectionMap:
    """Triangular correction (d x + P(y, z), y, z) with d a tower unit."""

    d: TowerScalar
    correction: MultiPoly  # in variables (y, z)
    as_map: PolyMap
    exp_target: PolyMap


def correction_map(alpha, params: DegenerationParams) -> CorrectionMap:
    """Find the tame f = (d x + P(y,z), y, z) with f o alpha = exp(lam delta).

    alpha may be an AlphaResult or the limit map itself.  Its inverse is built
    from the factored word of the family (conjugated and specialized at
    t = 0), never by jet iteration over the tower.
    """
    if isinstance(alpha, AlphaResult):
        alpha_map, tower = alpha.alpha, alpha.tower
    else:
        alpha_map = alpha
        tower = alpha_map.ring.backend
        if not isinstance(tower, TowerRing):
            raise ShapeViolation("correction needs a map over the tower ring")
    ring3 = alpha_map.ring
    x, y, z = ring3.gens()

    gen = build_generators(params)
    tring = gen.ring
    f_inv = gen.F_factor.inverse_factor(tring).to_map(tring)
    sigma_inv = compose(gen.G_inv, compose(f_inv, gen.G))
    _certify_polynomial_in_t(sigma_inv, "sigma_t^{-1}")
    _, alpha_inv = _conjugate_by_diagonal(sigma_inv, tower)

    if not is_inverse_pair(alpha_map, alpha_inv):
        raise ShapeViolation("conjugated inverse failed recomposition")

    phi = exp_lnd(make_delta(params.m, params.n, ring3), tower.lam())
    g = compose(phi, alpha_inv)
    if g.components[1] != y or g.components[2] != z:
        raise ShapeViolation(
            "correction candidate moves y or z; expected (d x + P(y,z), y, z)")
    d = None
    p_terms = {}
    for (ex, ey, ez), coeff in g.components[0].terms.items():
        if ex == 0:
            p_terms[(ey, ez)] = coeff
        elif (ex, ey, ez) == (1, 0, 0):
            d = coeff
        else:
            raise ShapeViolation(
                f"correction candidate has forbidden monomial "
                f"x^{ex}*y^{ey}*z^{ez}")
    if d is None or tower.try_divisor_inverse(d) is None:
        raise ShapeViolation(f"correction coefficient d = {d!r} is not a unit")
    ring_yz = PolyRing(("y", "z"), tower)
    correction = MultiPoly(ring_yz, dict(p_terms))
    fmap = PolyMap(ring3, (x.scal_mul(d) + MultiPoly(
        ring3, {(0, ey, ez): v for (ey, ez), v in p_terms.items()}), y, z))
    if compose(fmap, alpha_map) != phi:
        raise ShapeViolation("correction identity f o alpha = exp(lam delta) "
                             "failed")
    return CorrectionMap(d=d, correction=correction, as_map=fmap,
                         exp_target=phi)


# ---------------------------------------------------------------------------
# density of wild maps: t -> exp(t delta) o sigma
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DenseFamily:
    """The family exp(t delta) o sigma over Q(t) with its limit at t = 0."""

    family: PolyMap
    sigma: PolyMap
    limit: PolyMap
    limit_matches: bool
    m: int
    n: int

    def at(self, point) -> PolyMap:
        """Family member at a rational parameter value."""
        return specialize_t(self.family, point)


def wild_dense_family(word: FactoredWord, m: int = 1, n: int = 1) -> DenseFamily:
    """Attach the perturbation exp(t delta) to a tame word.

    At t = 0 the exponential is the identity, so the family specializes back
    to the input word's map exactly; for t != 0 the members compose a wild
    exponential with a tame map.
    """
    qring = PolyRing(("x", "y", "z"), QQ)
    sigma = word.to_map(qring)
    tfield = FracField("t", QQ)
    tring = PolyRing(("x", "y", "z"), tfield)
    lifted = sigma.map_scalars(tfield.coerce, tring)
    phi_t = exp_lnd(make_delta(m, n, tring), tfield.gen())
    family = compose(phi_t, lifted)
    limit = specialize_t(family, 0)
    return DenseFamily(family=family, sigma=sigma, limit=limit,
                       limit_matches=(limit == sigma), m=m, n=n)
