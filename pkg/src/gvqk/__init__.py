"""Exact transforms between genus-zero Gromov-Witten, Gopakumar-Vafa and quantum K tables."""
from .arith import cyclotomic_norm_product, divisors, euler_phi, mobius, primitive_root_sum
from .curve_lattice import (
    CurveClass,
    GeometryModel,
    Truncation,
    canonical_degree,
    divide,
    index,
    multiples_up_to,
)
from .novikov_series import NovikovSeries, adams
from .transforms import (
    InvariantTable,
    TransformReport,
    degree_check,
    gv_from_gw,
    gv_from_qk,
    gv_power_sum,
    gw_from_gv,
    integrality_audit,
    kawasaki_constant,
    qk_from_gv,
    remark_leg_identity_check,
    vanishing_by_dimension,
)

__version__ = "0.1.0"

__all__ = [
    "cyclotomic_norm_product",
    "divisors",
    "euler_phi",
    "mobius",
    "primitive_root_sum",
    "CurveClass",
    "GeometryModel",
    "Truncation",
    "canonical_degree",
    "divide",
    "index",
    "multiples_up_to",
    "NovikovSeries",
    "adams",
    "InvariantTable",
    "TransformReport",
    "degree_check",
    "gv_from_gw",
    "gv_from_qk",
    "gv_power_sum",
    "gw_from_gv",
    "integrality_audit",
    "kawasaki_constant",
    "qk_from_gv",
    "remark_leg_identity_check",
    "vanishing_by_dimension",
]
