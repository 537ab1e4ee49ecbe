"""linf: exact symbolic calculus for graded differential algebras.

Library layout mirrors the conceptual layers: ``algebra`` holds the
graded-commutative kernel types, ``lie`` builds Chevalley-Eilenberg models
and cohomology, ``constructions`` the Weil/transgression/extension zoo,
``reps`` representations and twisted Bianchi machinery, ``charclass`` the
characteristic-class calculus, and ``cli`` the command-line front end.
"""

from .algebra import (
    AlgebraMap,
    DegreeError,
    Derivation,
    DgcAlgebra,
    Generator,
    GeneratorMismatch,
    LinfError,
    Poly,
    identity_map,
)
from .kernel import BACKEND, TermBudgetExceeded

__version__ = "0.1.0"

__all__ = [
    "AlgebraMap",
    "BACKEND",
    "DegreeError",
    "Derivation",
    "DgcAlgebra",
    "Generator",
    "GeneratorMismatch",
    "LinfError",
    "Poly",
    "TermBudgetExceeded",
    "identity_map",
    "__version__",
]
