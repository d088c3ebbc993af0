"""Exact q-Bernoulli numbers with weight, the p-adic q-integral and the
weighted q-Bernoulli measure, with machine verification of their identities."""

from .characters import (
    DirichletChar,
    char_eval,
    char_eval_ratio,
    character,
    character_from_exponents,
    enumerate_characters,
    generalized_beta,
)
from .errors import (
    DegenerateEquation,
    DivisionByZero,
    NotInvertible,
    NotPAdicInteger,
    PoleAtOne,
    PrecisionLoss,
)
from .exactfield import CycElem, FieldElem, eval_at_one, monomial, qbracket, qnumber, substitute_q_power
from .integral import RiemannSumSpec, riemann_sum, witt_convergence
from .measure import (
    Ball,
    additivity_check,
    chi_operator,
    eq22_check,
    integral_char_pX,
    integral_char_X,
    mu_ball,
    regularized_integral_Xstar,
    theorem2_criterion,
    total_mass,
)
from .padic import CycPAdic, PAdic, QPoint, evaluate, q_power, qbracket_padic, vp
from .qbernoulli import (
    carlitz_beta,
    distribution_check,
    extended_beta,
    family_table,
    recurrence_residual,
    weighted_beta,
    weighted_beta_poly,
    xi,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "CycElem",
    "CycPAdic",
    "DegenerateEquation",
    "DirichletChar",
    "DivisionByZero",
    "FieldElem",
    "NotInvertible",
    "NotPAdicInteger",
    "PAdic",
    "PoleAtOne",
    "PrecisionLoss",
    "QPoint",
    "RiemannSumSpec",
    "additivity_check",
    "carlitz_beta",
    "char_eval",
    "char_eval_ratio",
    "character",
    "character_from_exponents",
    "chi_operator",
    "distribution_check",
    "enumerate_characters",
    "eq22_check",
    "eval_at_one",
    "evaluate",
    "extended_beta",
    "family_table",
    "generalized_beta",
    "integral_char_X",
    "integral_char_pX",
    "monomial",
    "mu_ball",
    "q_power",
    "qbracket",
    "qbracket_padic",
    "qnumber",
    "recurrence_residual",
    "regularized_integral_Xstar",
    "riemann_sum",
    "substitute_q_power",
    "theorem2_criterion",
    "total_mass",
    "vp",
    "weighted_beta",
    "weighted_beta_poly",
    "witt_convergence",
    "xi",
]
