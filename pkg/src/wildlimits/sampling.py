"""Seeded random generators for maps, words and scalars.

Used by the property suites and by the CLI demo verb.  All sampling takes an
explicit random.Random so every run is reproducible from a seed.  Word
samplers bound the degree of the composed map (resampling factor degrees
when the running product gets too large) so that downstream factorizations
stay within test budgets.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .maps import AffineFactor, ElementaryFactor, FactoredWord, PolyMap
from .multipoly import PolyRing
from .scalars import QQ, FracField


def random_fraction(rng: Random, height: int = 3, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if q or not nonzero:
            return q


def random_zpoly(rng: Random, field: FracField, height: int = 3,
                 zdeg: int = 2, nonzero: bool = False):
    """Random polynomial in the coefficient indeterminate, as a scalar."""
    while True:
        coeffs = {k: Fraction(rng.randint(-height, height))
                  for k in range(rng.randint(0, zdeg) + 1)}
        s = field.poly(coeffs)
        if s or not nonzero:
            return s


def random_poly(ring: PolyRing, rng: Random, max_degree: int = 3,
                max_terms: int = 4, height: int = 3, scalar_sampler=None):
    """Random sparse polynomial; may be zero when every coefficient cancels."""
    if scalar_sampler is None:
        def scalar_sampler(r):
            return random_fraction(r, height)
    n = ring.nvars
    acc = ring.zero
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * n
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            exps[rng.randrange(n)] += 1
        acc = acc + ring.monomial(exps, ring.backend.coerce(scalar_sampler(rng)))
    return acc


def random_invertible_matrix(rng: Random, n: int, height: int = 3):
    from .maps import matrix_det

    while True:
        mat = tuple(tuple(Fraction(rng.randint(-height, height))
                          for _ in range(n)) for _ in range(n))
        if matrix_det(mat, QQ):
            return mat


def random_affine_factor(ring: PolyRing, rng: Random, height: int = 3,
                         scalar_sampler=None) -> AffineFactor:
    """Random invertible affine factor; integer entries by default."""
    n = ring.nvars
    backend = ring.backend
    mat = tuple(tuple(backend.coerce(v) for v in row)
                for row in random_invertible_matrix(rng, n, height))
    if scalar_sampler is None:
        trans = tuple(backend.coerce(Fraction(rng.randint(-height, height)))
                      for _ in range(n))
    else:
        trans = tuple(backend.coerce(scalar_sampler(rng)) for _ in range(n))
    return AffineFactor(mat, trans)


def random_elementary_factor(ring: PolyRing, rng: Random, max_degree: int = 3,
                             height: int = 3, scalar_sampler=None) -> ElementaryFactor:
    """Random elementary factor; integer coefficients of |value| <= height
    by default."""
    n = ring.nvars
    index = rng.randrange(n) + 1
    others = [i for i in range(n) if i != index - 1]
    acc = ring.zero
    if scalar_sampler is None:
        def scalar_sampler(r):
            return Fraction(r.randint(-height, height))
    for _ in range(rng.randint(1, 3)):
        exps = [0] * n
        budget = rng.randint(1, max_degree)
        for _ in range(budget):
            exps[rng.choice(others)] += 1
        acc = acc + ring.monomial(exps, ring.backend.coerce(scalar_sampler(rng)))
    if not acc:
        exps = [0] * n
        exps[others[0]] = max_degree
        acc = ring.monomial(exps, 1)
    return ElementaryFactor(index, acc)


def random_word(ring: PolyRing, rng: Random, max_factors: int = 5,
                elem_degree: int = 3, height: int = 3, degree_cap: int = 16,
                scalar_sampler=None) -> FactoredWord:
    """Random affine/elementary word whose composed degree stays below the cap."""
    from .maps import compose

    factors: list = []
    current = PolyMap.identity(ring)
    for _ in range(rng.randint(1, max_factors)):
        for _attempt in range(8):
            if rng.random() < 0.4:
                fac = random_affine_factor(ring, rng, height, scalar_sampler)
            else:
                fac = random_elementary_factor(ring, rng, elem_degree, height,
                                               scalar_sampler)
            candidate = compose(current, fac.to_map(ring))
            if candidate.degree() <= degree_cap:
                factors.append(fac)
                current = candidate
                break
    if not factors:
        factors.append(random_affine_factor(ring, rng, height, scalar_sampler))
    return FactoredWord(factors)


def random_plane_elementary_kz(ring: PolyRing, rng: Random,
                               elem_degree: int = 4, height: int = 3,
                               zdeg: int = 2) -> ElementaryFactor:
    """Integral plane elementary with a rational (z-free) leading coefficient.

    Keeping the top coefficient in Q* keeps the leading forms of arbitrary
    compositions rational, so the canonical reduction never divides by a
    z-dependent unit and certifies these words tame.  Lower coefficients
    range over Q[z] freely.
    """
    field = ring.backend
    index = rng.randrange(2) + 1
    other = 1 - (index - 1)
    deg = rng.randint(1, elem_degree)
    top = Fraction(rng.choice([v for v in range(-height, height + 1) if v]))
    exps = [0, 0]
    exps[other] = deg
    acc = ring.monomial(exps, field.coerce(top))
    for k in range(deg):
        coeff = random_zpoly(rng, field, height=height, zdeg=zdeg)
        if coeff:
            exps = [0, 0]
            exps[other] = k
            acc = acc + ring.monomial(exps, coeff)
    return ElementaryFactor(index, acc)


def random_plane_word_kz(rng: Random, max_factors: int = 6,
                         elem_degree: int = 4, height: int = 3,
                         zdeg: int = 2, degree_cap: int = 20) -> FactoredWord:
    """Random tame word in the plane over Q[z] (integral coefficients).

    Affine linear parts are rational and elementary leading coefficients are
    rational (translations and lower coefficients carry z), so the sampled
    words stay certifiably tame; see random_plane_elementary_kz.
    """
    field = FracField("z", QQ)
    ring = PolyRing(("x", "y"), field)

    def aff_sampler(r):
        return random_zpoly(r, field, height=height, zdeg=zdeg)

    from .maps import compose

    factors: list = []
    current = PolyMap.identity(ring)
    for _ in range(rng.randint(1, max_factors)):
        for _attempt in range(8):
            if rng.random() < 0.35:
                mat = tuple(tuple(field.coerce(v) for v in row)
                            for row in random_invertible_matrix(rng, 2, height))
                fac = AffineFactor(mat, (aff_sampler(rng), aff_sampler(rng)))
            else:
                fac = random_plane_elementary_kz(ring, rng, elem_degree,
                                                 height, zdeg)
            candidate = compose(current, fac.to_map(ring))
            if candidate.degree() <= degree_cap:
                factors.append(fac)
                current = candidate
                break
    if not factors:
        mat = tuple(tuple(field.coerce(v) for v in row)
                    for row in random_invertible_matrix(rng, 2, height))
        factors.append(AffineFactor(mat, (field.zero, field.zero)))
    return FactoredWord(factors)


def random_triangular_plane_kz(rng: Random, height: int = 3, zdeg: int = 2,
                               max_degree: int = 3):
    """Random triangular plane automorphism (a x + p(y), b y + c) over Q[z].

    As in random_plane_elementary_kz, p's leading coefficient is rational so
    that composing with these maps preserves certifiable tameness.
    """
    field = FracField("z", QQ)
    ring = PolyRing(("x", "y"), field)
    x, y = ring.gens()
    a = Fraction(rng.choice([v for v in range(-height, height + 1) if v]))
    b = Fraction(rng.choice([v for v in range(-height, height + 1) if v]))
    deg = rng.randint(0, max_degree)
    p = (y ** deg).scal_mul(
        Fraction(rng.choice([v for v in range(-height, height + 1) if v]))) \
        if deg else ring.const(random_zpoly(rng, field, height, zdeg))
    for k in range(deg):
        p = p + (y ** k).scal_mul(random_zpoly(rng, field, height, zdeg))
    c = random_zpoly(rng, field, height, zdeg)
    return PolyMap(ring, (x.scal_mul(a) + p, y.scal_mul(b) + ring.const(c)))
