"""Exact computations for the twisted Heisenberg-Virasoro algebra and its intermediate-series modules."""

from .algebra import (
    CENTER,
    CI,
    CL,
    CLI,
    Basis,
    I,
    L,
    LieElement,
    SpanPattern,
    VerificationReport,
    bracket,
    check_ideal,
    check_jacobi,
)
from .involutions import MinusType, PlusType, ConstraintViolation, apply, check_axioms, validate_params
from .modules import (
    HVSeries,
    ModuleVector,
    ProperSubmodule,
    Simple,
    VirAab,
    VirAalpha,
    VirBbeta,
    act,
    action_is_representation,
    detect_simplicity,
)
from .parser import ParseError, format_element, parse_element
from .scalar import GaussianRational, UnitPhase
from .unitarity import decide_unitary, predicate_unitary, solve_gram
from .virprime import build_vir_prime

__version__ = "0.1.0"

__all__ = [
    "CENTER", "CI", "CL", "CLI", "Basis", "I", "L", "LieElement", "SpanPattern",
    "VerificationReport", "bracket", "check_ideal", "check_jacobi",
    "MinusType", "PlusType", "ConstraintViolation", "apply", "check_axioms", "validate_params",
    "HVSeries", "ModuleVector", "ProperSubmodule", "Simple", "VirAab", "VirAalpha", "VirBbeta",
    "act", "action_is_representation", "detect_simplicity",
    "ParseError", "format_element", "parse_element",
    "GaussianRational", "UnitPhase",
    "decide_unitary", "predicate_unitary", "solve_gram",
    "build_vir_prime",
]
