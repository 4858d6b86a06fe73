"""Finite fields, matrices over them, and classical matrix groups."""

from .field import FieldSpec, GF, field, field_ops, field_spec
from .matrix import FFMatrix
from .polys import (
    InvariantFactors,
    invariant_factors,
    is_pseudoreflection,
    is_transvection,
    minimal_polynomial,
    characteristic_polynomial,
    unipotent_shape,
)
from .classical import (
    MatGroupSpec,
    catalog_spec,
    classical_group,
    projectivize,
    realize,
)
