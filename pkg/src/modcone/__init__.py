"""Exact-rational divisor classes, cones and slopes on moduli of curves."""

from .picard import (
    BoundaryIndex,
    DivisorClass,
    ModuliSignature,
    SymmetricDivisorClass,
    canonicalize,
    deserialize,
    divisor_class,
    expand,
    lincomb,
    sep,
    serialize,
    symmetrize,
)
from .cones import (
    Certificate,
    cone_member,
    enumerate_fcurve_functionals,
    enumerate_fcurves_0n,
    f_ample_check,
    f_nef_check,
    nef_sufficient,
)
from .slopes import (
    INFINITE,
    brill_noether_class,
    canonical_class_mg,
    curve_profile,
    general_type_certificate_mg,
    k3_slope_test,
    named_class,
    pair,
    rho,
    slope,
)
from .syzygy import bound_check, family, fixed_slopes, ranks, specialization_checks, virtual_slope
from .jacobian import EvalContext, calibrated_convention, harris_tu, solve_coefficients
from .pointed import (
    canonical_class_gn,
    general_type_certificate_gn,
    logan_class,
    mgn_table,
    mrc_class,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
