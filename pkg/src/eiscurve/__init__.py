"""p-adic Eisenstein families at weight one and their derivatives.

Capped-precision p-adic arithmetic, Kubota-Leopoldt L-functions,
L-invariants from p-units, Lambda-adic q-expansions, the weight-one
generalized eigenspace and finite models of the associated Hecke algebras.
"""
from .characters import DirichletCharacter, bernoulli, generalized_bernoulli, parse_character
from .errors import EmbeddingAmbiguityError, PrecisionError, PreconditionError
from .families import (
    QExpansion,
    cuspidal_family,
    eisenstein_qexp,
    lambda_eisenstein,
    verify_linear_relation,
)
from .hecke import build_T, build_Tord, build_Tprime, congruence_module, fiber_and_socle
from .lfunction import ferrero_greenberg_check, lp_jet, lp_value, zeta_series
from .linvariant import PUnitData, class_number, l_invariant, split_prime_power_generator
from .overconvergent import build_basis, eigenspace_checks, gross_check
from .padic import PadicNumber, from_rational, iwasawa_log, teichmuller
from .series import TruncatedSeries
from .verify import precision_stability, verify_all

__version__ = "0.1.0"

__all__ = [
    "DirichletCharacter", "EmbeddingAmbiguityError", "PUnitData", "PadicNumber",
    "PrecisionError", "PreconditionError", "QExpansion", "TruncatedSeries",
    "bernoulli", "build_T", "build_Tord", "build_Tprime", "build_basis", "class_number",
    "congruence_module", "cuspidal_family", "eigenspace_checks", "eisenstein_qexp",
    "ferrero_greenberg_check", "fiber_and_socle", "from_rational", "generalized_bernoulli",
    "gross_check", "iwasawa_log", "l_invariant", "lambda_eisenstein", "lp_jet", "lp_value",
    "parse_character", "precision_stability", "split_prime_power_generator", "teichmuller",
    "verify_all", "verify_linear_relation", "zeta_series",
]
