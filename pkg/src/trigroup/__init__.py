"""Triangles of finite groups: Gersten-Stallings angles, curvature, billiard
certificates, free-subgroup witnesses and the large/small Tits alternative."""

from .diagram import (
    CorsonDiagram,
    all_angles,
    canonical_triangle,
    classify_curvature,
    diagram_from_json,
    dominate,
    gs_angle,
    load_diagram,
    validate,
)
from .groups import FiniteGroup, cyclic, dihedral, load_group
from .quadrat import QuadRat
from .tits import Verdict, classify

__version__ = "0.1.0"

__all__ = [
    "CorsonDiagram",
    "FiniteGroup",
    "QuadRat",
    "Verdict",
    "all_angles",
    "canonical_triangle",
    "classify",
    "classify_curvature",
    "cyclic",
    "diagram_from_json",
    "dihedral",
    "dominate",
    "gs_angle",
    "load_diagram",
    "load_group",
    "validate",
]
