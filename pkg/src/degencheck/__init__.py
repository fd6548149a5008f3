"""Exact verification of identities, derivation dimensions and degenerations
of finite-dimensional anticommutative algebras."""

from .algebra import (
    AlgebraStructure,
    IdentityWitness,
    annihilator_dimension,
    check_jacobi,
    check_malcev,
    check_metabelian,
    check_tortkara,
    jacobian,
    lcs_dimensions,
    product,
)
from .arith import (
    EvaluationPole,
    PoleError,
    Polynomial,
    RationalFunction,
    evaluate,
    limit_t0,
    substitute,
    t_order,
)
from .catalog import Catalog, builtin, parse_algebra, parse_certificate
from .degeneration import (
    BasisFamily,
    DegenerationCertificate,
    VerificationReport,
    transformed_constants,
    verify_all,
    verify_certificate,
)
from .derivations import derivation_dimension, derivation_dimension_at
from .expr import parse_expression

__version__ = "0.1.0"

__all__ = [
    "AlgebraStructure",
    "IdentityWitness",
    "annihilator_dimension",
    "check_jacobi",
    "check_malcev",
    "check_metabelian",
    "check_tortkara",
    "jacobian",
    "lcs_dimensions",
    "product",
    "EvaluationPole",
    "PoleError",
    "Polynomial",
    "RationalFunction",
    "evaluate",
    "limit_t0",
    "substitute",
    "t_order",
    "Catalog",
    "builtin",
    "parse_algebra",
    "parse_certificate",
    "BasisFamily",
    "DegenerationCertificate",
    "VerificationReport",
    "transformed_constants",
    "verify_all",
    "verify_certificate",
    "derivation_dimension",
    "derivation_dimension_at",
    "parse_expression",
]
