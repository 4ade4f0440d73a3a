"""
Exact intertwining-coefficient combinatorics for finite Weyl groups:
Bruhat and weak orders, the Demazure monoid, Iwahori-Hecke pairing
polynomials, deformed R-polynomials, and the sigma(u, v, w) classification.
"""

from .coxeter import (
    CartanType,
    CoxeterGroup,
    Element,
    GroupMismatchError,
    OrderCapError,
    UnsupportedTypeError,
    WordError,
    build_group,
)
from .demazure import (
    DemazureContext,
    circ,
    down_left,
    down_right,
    mixed_meet,
    up_left,
    up_right,
    v_min,
)
from .hecke import HeckeElem, ThetaTable, lambda_w, t_basis, t_mul, theta
from .kl import KLTable, check_theta_power_conjecture
from .polyring import LaurentPoly, RationalFn, binomial, binomial_divide
from .rpoly import RPolyTable, bar, s_set, s_set3
from .sigma import (
    ClassificationReport,
    SigmaEngine,
    classify,
    verify_main_theorem,
    verify_vanishing,
)

__all__ = [
    "CartanType",
    "CoxeterGroup",
    "Element",
    "GroupMismatchError",
    "OrderCapError",
    "UnsupportedTypeError",
    "WordError",
    "build_group",
    "DemazureContext",
    "circ",
    "up_left",
    "down_left",
    "up_right",
    "down_right",
    "mixed_meet",
    "v_min",
    "HeckeElem",
    "ThetaTable",
    "t_basis",
    "t_mul",
    "lambda_w",
    "theta",
    "KLTable",
    "check_theta_power_conjecture",
    "LaurentPoly",
    "RationalFn",
    "binomial",
    "binomial_divide",
    "RPolyTable",
    "bar",
    "s_set",
    "s_set3",
    "ClassificationReport",
    "SigmaEngine",
    "classify",
    "verify_main_theorem",
    "verify_vanishing",
]

__version__ = "0.1.0"
