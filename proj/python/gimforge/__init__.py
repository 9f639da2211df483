"""Generalized intersection matrices: braid classification and presented Lie algebras."""

from ._gimforge import (
    GimError,
    bracket_eval,
    classify,
    coset_obstruction,
    definiteness,
    diagram_dot,
    enumerate,
    gim_from_toroidal,
    graded_dims,
    reduce_positive,
    symmetrizer,
    template,
    validate,
)

__all__ = [
    "GimError",
    "bracket_eval",
    "classify",
    "coset_obstruction",
    "definiteness",
    "diagram_dot",
    "enumerate",
    "gim_from_toroidal",
    "graded_dims",
    "reduce_positive",
    "symmetrizer",
    "template",
    "validate",
]
