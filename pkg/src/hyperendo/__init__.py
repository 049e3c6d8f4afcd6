"""Hyperelliptic Jacobian arithmetic with explicit real endomorphisms and GLV."""

from .errors import HyperEndoError
from .field import FieldDesc, FieldElement, field_arith, field_inv, field_pow, field_sqrt, gf
from .poly import Polynomial, RationalFunction, extension, poly_divmod, poly_roots, poly_xgcd
from .jacobian import (
    HyperellipticCurve,
    MumfordDivisor,
    cantor_reduce,
    curve_new,
    jac_add,
    jac_double,
    jac_neg,
    jac_scalar_mul,
    point_divisor,
    random_divisor,
)
from .endo import (
    Endomorphism,
    TNTables,
    apply_N,
    apply_T,
    apply_endo_poly,
    endo_evaluate,
    endo_evaluate_pointwise,
    rational_maps,
)
from .families import (
    FamilyParams,
    dickson,
    make_artin_schreier,
    make_cyclotomic,
    make_family,
    make_mestre_g2,
    make_mestre_g3,
)
from .order import LPolynomial, count_curve_points, eta_eigenvalues, jacobian_order, match_eigenvalue
from .glv import GlvBasis, glv_basis, glv_decompose, glv_scalar_mul, multi_scalar_mul

__version__ = "0.1.0"
