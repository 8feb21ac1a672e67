"""
有限域上的精确代数：域、矩阵与子空间、线性关系、双陪集范畴与 colligation
"""

from .exceptions import (
    BlockMismatch, CheckFailure, ConfigError, DcosetError, DegreeMismatch, DimMismatch, FieldMismatch,
    InvariantViolation, LayoutInconsistent, NonPrimeCharacteristic, NotComparable, NotComposable,
    ParseError, ReducibleModulus, Singular, SingularPencil, TooLarge, ZeroInverse
)
from .gf import FieldSpec, Scalar, enumerate_elements, field_from_order, field_make
from .linalg import BlockLayout, Mat, Subspace, block_assemble, rref, solve_affine
from .relation import LinRel, enumerate_relations, rel_compose
from .coset import (
    Coset, KappaTable, ObjectA, Window, canonical_kappa, canonical_window, coset_from_window,
    enumerate_cosets, involute, precedes, render_diagram, star, star_matrix, zeta
)
from .colligation import Colligation, circ, transfer

__all__ = [
    "DcosetError", "NonPrimeCharacteristic", "ReducibleModulus", "DegreeMismatch", "FieldMismatch",
    "ZeroInverse", "DimMismatch", "Singular", "LayoutInconsistent", "TooLarge", "NotComposable",
    "NotComparable", "InvariantViolation", "BlockMismatch", "SingularPencil", "ParseError",
    "CheckFailure", "ConfigError",
    "FieldSpec", "Scalar", "field_make", "field_from_order", "enumerate_elements",
    "Mat", "Subspace", "BlockLayout", "block_assemble", "rref", "solve_affine",
    "LinRel", "rel_compose", "enumerate_relations",
    "ObjectA", "Window", "Coset", "KappaTable", "precedes", "coset_from_window", "star_matrix",
    "star", "involute", "zeta", "canonical_kappa", "canonical_window", "enumerate_cosets",
    "render_diagram",
    "Colligation", "circ", "transfer",
]
