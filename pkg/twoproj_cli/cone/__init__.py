from __future__ import annotations

from .geometry import (
    ConeConfig,
    FourMomentum,
    Orientation,
    boost,
    chi_cone,
    cone_indicator,
    minkowski_form,
    minkowski_q,
)
from .oracle import MonteCarlo, OracleResult, TensorGrid, lambda_oracle, mu_oracle
from .symbol import (
    AsymptoticRow,
    QuadParams,
    asymptotic_convergence,
    evaluate_log_radial,
    lambda_,
    lambda_asymptotic,
    lambda_gradient,
    lambda_reduced,
    lorentz_deviation,
    mu,
    mu_complement_reduced,
    mu_reduced,
)
from .table import (
    RadialTable,
    build_radial_table,
    interpolate_lambda,
    interpolate_mu,
    interpolate_mu_complement,
)

__all__ = (
    "AsymptoticRow",
    "ConeConfig",
    "FourMomentum",
    "MonteCarlo",
    "OracleResult",
    "Orientation",
    "QuadParams",
    "RadialTable",
    "TensorGrid",
    "asymptotic_convergence",
    "boost",
    "build_radial_table",
    "chi_cone",
    "cone_indicator",
    "evaluate_log_radial",
    "interpolate_lambda",
    "interpolate_mu",
    "interpolate_mu_complement",
    "lambda_",
    "lambda_asymptotic",
    "lambda_gradient",
    "lambda_oracle",
    "lambda_reduced",
    "lorentz_deviation",
    "minkowski_form",
    "minkowski_q",
    "mu",
    "mu_complement_reduced",
    "mu_oracle",
    "mu_reduced",
)
