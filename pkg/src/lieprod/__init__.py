"""Exact computations with products by generators of nilpotent Lie algebras.

Everything is over the rationals (``fractions.Fraction``); no floating point
enters any decision.
"""

from .catalog import dixmier_lister_8, filiform, heisenberg_3, luks_16, abelian
from .derivations import DerivationSpace, cnla_check, derivation_space, is_derivation
from .exactlin import Eliminator, Matrix, Subspace, nullspace, span
from .genprod import (
    ProductDecomposition,
    build_generator_cocycle,
    epsilon_min_n,
    power,
    power_stats,
    product_by_generators,
    two_cocycle_check,
)
from .liecore import LieAlgebra, NotNilpotentError, invariants, validate
from .salgebra import prop3_check, prop4_generator_check, relations_check, s_algebra_certificate

__all__ = [
    "DerivationSpace", "Eliminator", "LieAlgebra", "Matrix", "NotNilpotentError",
    "ProductDecomposition", "Subspace", "abelian", "build_generator_cocycle",
    "cnla_check", "derivation_space", "dixmier_lister_8", "epsilon_min_n",
    "filiform", "heisenberg_3", "invariants", "is_derivation", "luks_16",
    "nullspace", "power", "power_stats", "product_by_generators", "prop3_check",
    "prop4_generator_check", "relations_check", "s_algebra_certificate", "span", "two_cocycle_check",
    "validate",
]
