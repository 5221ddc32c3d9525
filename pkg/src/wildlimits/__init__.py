"""Exact computer algebra for polynomial automorphisms of affine 3-space.

Highlights: exponentials of locally nilpotent derivations, families of tame
automorphisms over Q(t) that degenerate to wild limits, a tameness certifier
for plane automorphisms over Q[z] via Jung-van der Kulk reduction, and the
degree/factor-count bound calculators.  All arithmetic is exact (rationals,
normalized rational functions, and a two-generator quotient-ring tower).
"""

from .bounds import BoundReport, SUBoundInput, bound_report, su_inequality_bound
from .degeneration import (AlphaResult, CorrectionMap, DegenerationParams,
                           DenseFamily, Generators, VerificationReport,
                           build_alpha, build_generators, build_sigma,
                           correction_map, pm_poly, verify_assertions,
                           wild_dense_family)
from .errors import (CapExceeded, IllegalDivisor, InvalidStarReducedData,
                     MapSyntaxError, MixedContext, NotIntegralInput,
                     NotInvertibleLinearPart, NotNilpotentWithinCap,
                     NotPlaneAutomorphism, NotPolynomialInT, PoleAtZero,
                     ResidualTowerGenerators, ShapeViolation, WildlimitsError,
                     ZeroDenominator, ZeroPolynomial)
from .lnd import Derivation, apply_derivation, exp_lnd, make_delta
from .maps import (AffineFactor, ElementaryFactor, FactoredWord, PolyMap,
                   TriangularFactor, compose, fixes_last_variable,
                   from_plane_over_last, inverse, is_inverse_pair,
                   jacobian_det, sdeg, specialize_t, to_plane_over_last)
from .multipoly import NEG_INF, MultiPoly, PolyRing, poly_arith
from .parser import MapExpression, parse_map, parse_poly
from .plane import (TamenessVerdict, WildCertificate, length,
                    tame_check_over_kz, vdk_factor)
from .printer import emit, map_latex, map_text, poly_latex, poly_text
from .scalars import (QQ, FracField, RatFunc, Rational, half_binomial,
                      rational_from_str, rational_to_str, ratfunc_normalize)
from .tower import TowerRing, TowerScalar, TowerSpec, tower_make, tower_unit_inverse

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
