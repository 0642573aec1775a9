"""Translation-invariant splitting Gibbs measures of the three-state SOS model
with external field on a Cayley tree."""
from .compat import check_compatibility, check_identity, equivalence_probe
from .general import lambda_star, lemma1_count, solve_z0eq1_branch, theta_c
from .k2 import classify, count_tisgm, lambda_curves, solutions
from .kernels import BACKEND
from .model import BoundaryLaw, ModelParams, build_ball, gibbs_table

__all__ = [
    "BACKEND", "BoundaryLaw", "ModelParams", "build_ball", "check_compatibility", "check_identity",
    "classify", "count_tisgm", "equivalence_probe", "gibbs_table", "lambda_curves", "lambda_star",
    "lemma1_count", "solutions", "solve_z0eq1_branch", "theta_c",
]
