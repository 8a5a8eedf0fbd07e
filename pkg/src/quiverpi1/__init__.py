"""Fundamental groups of presentations of triangular bound quivers."""

from .algebra import AlgebraElement, Automorphism, apply_automorphism, invert
from .field import QQ, Field
from .gamma import explore, find_automorphism, find_sources, theorem_report, verify_properties
from .homotopy import are_homotopic, compare, compute_relation, generated_by
from .ideal import AdmissibilityError, AdmissibleIdeal, from_generators, image
from .pi1 import abelianization, identify, presentation, smith_normal_form
from .quiver import Quiver, enumerate_bypasses, enumerate_paths, spanning_tree

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError", "AdmissibleIdeal", "AlgebraElement", "Automorphism", "Field", "QQ", "Quiver",
    "abelianization", "apply_automorphism", "are_homotopic", "compare", "compute_relation",
    "enumerate_bypasses", "enumerate_paths", "explore", "find_automorphism", "find_sources",
    "from_generators", "generated_by", "identify", "image", "invert", "presentation",
    "smith_normal_form", "spanning_tree", "theorem_report", "verify_properties",
]
