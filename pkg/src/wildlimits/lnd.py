"""Locally nilpotent derivations and their exponential automorphisms.

A derivation is stored by the images of the variables and extended to the
whole polynomial ring by the Leibniz rule.  When the derivation is locally
nilpotent the exponential series terminates on every variable and
exp(lam * delta) is an automorphism; nilpotency is detected per variable by
literal vanishing of the iterated images, with a cap so that non-nilpotent
inputs fail finitely.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import MixedContext, NotNilpotentWithinCap
from .maps import PolyMap
from .multipoly import MultiPoly, PolyRing
from .scalars import QQ, FracField


class Derivation:
    """Derivation given by one image polynomial per ring variable."""

    __slots__ = ("ring", "images")

    def __init__(self, ring: PolyRing, images):
        images = tuple(images)
        if len(images) != ring.nvars:
            raise MixedContext(
                f"{len(images)} images for {ring.nvars} variables")
        for img in images:
            if img.ring != ring:
                raise MixedContext("derivation image in a different ring")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):
        raise AttributeError("Derivation is immutable")

    def __call__(self, p: MultiPoly) -> MultiPoly:
        return apply_derivation(self, p)


def apply_derivation(delta: Derivation, p: MultiPoly) -> MultiPoly:
    """Leibniz extension: sum over variables of (dp/dx_i) * delta(x_i)."""
    if p.ring != delta.ring:
        raise MixedContext("polynomial and derivation live in different rings")
    acc = delta.ring.zero
    for var, image in zip(delta.ring.vars, delta.images):
        if not image:
            continue
        part = p.diff(var)
        if part:
            acc = acc + part.mul(image)
    return acc


def make_delta(m: int, n: int, ring: PolyRing | None = None) -> Derivation:
    """The locally nilpotent derivation with kernel element z*x + y^(m+1).

    Images: delta(x) = -(m+1) y^m z^(n-1) (zx + y^(m+1)),
    delta(y) = z^n (zx + y^(m+1)), delta(z) = 0.
    """
    if m < 1 or n < 1:
        raise ValueError("make_delta needs m, n >= 1")
    if ring is None:
        ring = PolyRing(("x", "y", "z"), QQ)
    x, y, z = ring.gens()
    kernel = z.mul(x) + y ** (m + 1)
    dx = -(y ** m).mul(z ** (n - 1)).mul(kernel).scal_mul(m + 1)
    dy = (z ** n).mul(kernel)
    return Derivation(ring, (dx, dy, ring.zero))


def exp_lnd(delta: Derivation, lam=None, cap: int = 64) -> PolyMap:
    """Exponential automorphism of a locally nilpotent derivation.

    Component i is sum_j lam^j delta^j(x_i) / j!, the series terminating when
    the iterated image vanishes.  ``lam`` is a backend scalar; by default a
    fresh indeterminate is adjoined to the backend (so the result is the
    one-parameter family itself).
    """
    ring = delta.ring
    if lam is None:
        taken = set(delta.ring.backend.gen_names()) | set(ring.vars)
        name = next(s for s in ("lambda", "mu", "nu", "s0", "s1") if s not in taken)
        field = FracField(name, ring.backend)
        ring = PolyRing(delta.ring.vars, field)
        delta = Derivation(ring, [img.map_scalars(field.coerce, ring)
                                  for img in delta.images])
        lam = field.gen()
    else:
        lam = ring.backend.coerce(lam)
    comps = []
    for var, gen in zip(ring.vars, ring.gens()):
        series = gen
        power = apply_derivation(delta, gen)
        j = 1
        while power:
            if j > cap:
                raise NotNilpotentWithinCap(
                    f"delta^{cap}({var}) still nonzero; derivation is not "
                    f"locally nilpotent within the cap")
            coeff = (lam ** j) * Fraction(1, factorial(j))
            series = series + power.scal_mul(coeff)
            power = apply_derivation(delta, power)
            j += 1
        comps.append(series)
    return PolyMap(ring, comps)
