"""Denominators z(P) of rational points on integral Weierstrass curves, and how often they are prime."""

from .arith import factor, gcd, is_prime, isqrt_exact
from .census import (CensusResult, DivReport, Prediction, corollary_ratio, full_report,
                     heuristic_count, primitive_divisors, run_census, verify_divisibility,
                     verify_lemma, z_sequence)
from .curve import (INFINITY, CurveModel, DenomTriple, Point, add, denom_form, make_curve,
                    negate, on_curve, scalar_mul)
from .lattice import EnumRecord, GrowthFit, MWBasis, enumerate_up_to, fit_growth, ray_walk
from .torsion import ShortModel, TorsionGroup, to_short, torsion_subgroup

__version__ = "0.1.0"
