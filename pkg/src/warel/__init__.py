"""Finite weakly associative relation algebras and their representations."""

from .core import (
    AtomStructure,
    ClassReport,
    StructureError,
    GuardExceeded,
    atoms_of,
    check_equation,
    classify,
    eval_term,
    mask_of,
    validate_atom_structure,
)

__all__ = [
    "AtomStructure",
    "ClassReport",
    "StructureError",
    "GuardExceeded",
    "atoms_of",
    "check_equation",
    "classify",
    "eval_term",
    "mask_of",
    "validate_atom_structure",
]
