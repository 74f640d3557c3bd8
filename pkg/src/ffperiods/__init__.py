"""Exact periods of CM local shtukas over function-field local rings."""

from .carlitz import (
    Place,
    carlitz_infty_log_abs,
    carlitz_product_formula,
    carlitz_v_log_abs,
    finite_places,
)
from .cmshtuka import (
    CMAlgebra,
    CMComponent,
    Embedding,
    LocalShtukaStd,
    PeriodElement,
    ScalingData,
    averaged_period_valuation,
    cm_period_valuation,
    galois_character_check,
    hat_valuation,
    integral_u_omega,
    omega_period,
    omega_valuation_closed,
    omega_valuation_via_L,
    period_valuation_series,
    std_shtuka,
    tau_invariant_unit_part,
)
from .fields import FqField, PolyFq, monic_irreducibles
from .lfunctions import (
    ClassFunctionQ,
    LocalGaloisDatum,
    LogQValue,
    TameEmbedding,
    log_q_value,
    mu_art_v,
    regularized_sum,
    z_infty_at,
    z_v_rational,
    zeta_closed_forms,
)
from .ratfunc import QPoly, RatFunc
from .series import TruncSeries
from .towers import LocalFieldTower, TameAut, TowerElem, solve_frobenius_recursion

__version__ = "0.1.0"

__all__ = [
    "CMAlgebra", "CMComponent", "ClassFunctionQ", "Embedding", "FqField",
    "LocalFieldTower", "LocalGaloisDatum", "LocalShtukaStd", "LogQValue",
    "PeriodElement", "Place", "PolyFq", "QPoly", "RatFunc", "ScalingData",
    "TameAut", "TameEmbedding", "TowerElem", "TruncSeries",
    "averaged_period_valuation", "carlitz_infty_log_abs",
    "carlitz_product_formula", "carlitz_v_log_abs", "cm_period_valuation",
    "finite_places", "galois_character_check", "hat_valuation",
    "integral_u_omega", "log_q_value", "monic_irreducibles", "mu_art_v",
    "omega_period", "omega_valuation_closed", "omega_valuation_via_L",
    "period_valuation_series", "regularized_sum", "solve_frobenius_recursion",
    "std_shtuka", "tau_invariant_unit_part", "z_infty_at", "z_v_rational",
    "zeta_closed_forms",
]
