from .fields import QQ, GF, FiniteField, RationalField, make_field, is_prime, parse_rational
from .linalg import Matrix
from .subspaces import enumerate_subspaces, gaussian_binomial

__all__ = [
    "QQ", "GF", "FiniteField", "RationalField", "make_field", "is_prime",
    "parse_rational", "Matrix", "enumerate_subspaces", "gaussian_binomial",
]
