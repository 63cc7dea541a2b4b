"""Supersingular elliptic curve identification over F_p and F_{p^2}."""

from .arith import FieldSpec, Fp2Element, construct_field, smallest_quadratic_extension
from .classify import (
    ClassifierConfig,
    Verdict,
    classify,
    identify,
    identify_fp_shortcut,
    monte_carlo,
    oracle_hasse,
    oracle_legendre,
    prove_modpoly,
)
from .curve import Curve, Point, curve_from_j, j_invariant

__all__ = [
    "ClassifierConfig",
    "Curve",
    "FieldSpec",
    "Fp2Element",
    "Point",
    "Verdict",
    "classify",
    "construct_field",
    "curve_from_j",
    "identify",
    "identify_fp_shortcut",
    "j_invariant",
    "monte_carlo",
    "oracle_hasse",
    "oracle_legendre",
    "prove_modpoly",
    "smallest_quadratic_extension",
]
