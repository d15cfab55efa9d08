"""Exact computations for pointed Hopf algebras over Z_n and their modules."""

from .algebra import Algebra, AlgebraSpec, Element, Variant, algebra_build, commutation_coeffs
from .blocks import blocks, central_idempotents
from .field import Field, Scalar, field_make, parse_scalar, pth_root
from .hopf import HopfStructure, integral_space, symmetric_verdict
from .linalg import Subspace
from .radext import jacobson_radical, radical, radical_powers
from .reps import Module, hom_space, iso_test, module_make, simple_modules, tensor_module

__all__ = [
    "Algebra",
    "AlgebraSpec",
    "Element",
    "Field",
    "HopfStructure",
    "Module",
    "Scalar",
    "Subspace",
    "Variant",
    "algebra_build",
    "blocks",
    "central_idempotents",
    "commutation_coeffs",
    "field_make",
    "hom_space",
    "integral_space",
    "iso_test",
    "jacobson_radical",
    "module_make",
    "parse_scalar",
    "pth_root",
    "radical",
    "radical_powers",
    "simple_modules",
    "symmetric_verdict",
    "tensor_module",
]
