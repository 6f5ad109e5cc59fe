"""Exact pointed Hopf algebras of diagonal type, their cocycle deformations
and Hochschild cohomology."""
from .errors import BudgetError, ConfigError, HopfDeformError, InputError, PropertyFailure
from .scalars import cyclotomic_session, get_field, set_cyclotomic_order
from .groups import FiniteAbelianGroup
from .braided import DiagonalDatum
from .hopfcore import Functional, HopfAlgebra, verify_hopf_axioms
from .liftings import LiftingParams, build_lifting, nichols_algebra

__version__ = "0.1.0"

__all__ = [
    "BudgetError", "ConfigError", "HopfDeformError", "InputError", "PropertyFailure",
    "cyclotomic_session", "get_field", "set_cyclotomic_order", "FiniteAbelianGroup", "DiagonalDatum",
    "Functional", "HopfAlgebra", "verify_hopf_axioms", "LiftingParams", "build_lifting", "nichols_algebra",
]
