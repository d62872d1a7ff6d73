"""Commutative monoid structures on affine toric varieties."""

from .bialg import MonoidStructure, TensorElement, comultiply
from .classify import classify_surface, isomorphic_roots
from .coxlift import cox_data, lift, lifted_product
from .toric import AffineToricVariety, DemazureRoot, build_variety, enumerate_roots, make_root

__version__ = "0.1.0"

__all__ = [
    "AffineToricVariety", "DemazureRoot", "MonoidStructure", "TensorElement",
    "build_variety", "classify_surface", "comultiply", "cox_data", "enumerate_roots",
    "isomorphic_roots", "lift", "lifted_product", "make_root",
]
