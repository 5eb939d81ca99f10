"""Numerical toolkit for Q-type spaces on the unit disc and circle."""

from .calculus import (
    FracDerivParams,
    frac_derivative,
    frac_derivative_integral,
    mg_decomposition,
    op_Ig,
    op_Mg,
    t_sigma_apply,
    volterra_Tg,
)
from .families import FamilySpec, TruncationError, make_family
from .geometry import Arc, ArcGrid, PointGrid, mobius
from .params import InadmissibleParams, SpaceParams, validate
from .quadrature import DEFAULT, QuadConfig, QuadratureError, RefinedValue, disc_integral
from .series import FourierSeries, TaylorSeries, cauchy_product
from .spaces import (
    NormResult,
    bmo_beta_seminorm,
    carleson_box_constant,
    carleson_mobius_constant,
    growth_seminorm,
    morrey_carleson_constant,
    morrey_norm,
    poisson_carleson_constant,
    q_circle_difference_form,
    q_circle_seminorm,
    q_disc_box_seminorm,
    q_disc_mobius_norm,
)
from .verify import EXPERIMENTS, ComparabilityReport, run_experiment

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "ArcGrid",
    "ComparabilityReport",
    "DEFAULT",
    "EXPERIMENTS",
    "FamilySpec",
    "FourierSeries",
    "FracDerivParams",
    "InadmissibleParams",
    "NormResult",
    "PointGrid",
    "QuadConfig",
    "QuadratureError",
    "RefinedValue",
    "SpaceParams",
    "TaylorSeries",
    "TruncationError",
    "bmo_beta_seminorm",
    "carleson_box_constant",
    "carleson_mobius_constant",
    "cauchy_product",
    "disc_integral",
    "frac_derivative",
    "frac_derivative_integral",
    "growth_seminorm",
    "make_family",
    "mg_decomposition",
    "mobius",
    "morrey_carleson_constant",
    "morrey_norm",
    "op_Ig",
    "op_Mg",
    "poisson_carleson_constant",
    "q_circle_difference_form",
    "q_circle_seminorm",
    "q_disc_box_seminorm",
    "q_disc_mobius_norm",
    "run_experiment",
    "t_sigma_apply",
    "validate",
    "volterra_Tg",
]
