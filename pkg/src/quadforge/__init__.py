"""Binary quadratic forms, class groups and the small numerical toolkit around them."""

from . import classgroup, crypto, forms, geometry, intarith, numlin, orthogroup
from .classgroup import ClassElement, class_number_enum, class_number_formula, compose, pow_
from .errors import (
    CapacityError,
    ContractionError,
    ConvergenceError,
    DegenerateError,
    DomainError,
    FormatError,
    QuadForgeError,
    RankError,
)
from .forms import BinaryForm, IntMat2, reduce

__version__ = "0.1.0"

__all__ = [
    "classgroup", "crypto", "forms", "geometry", "intarith", "numlin", "orthogroup",
    "BinaryForm", "IntMat2", "ClassElement", "reduce", "compose", "pow_",
    "class_number_enum", "class_number_formula",
    "QuadForgeError", "DomainError", "FormatError", "CapacityError", "DegenerateError",
    "RankError", "ConvergenceError", "ContractionError",
]
