"""Splice diagrams of graph multilinks and their Novikov homology."""

from .algebra import NovikovModule, cokernel, smith_normal_form
from .calculus import (
    fiber_multiplicity, is_fibered, linking, minimize, normalize, reduce, splice, split,
)
from .diagram import Arrow, Edge, SpliceDiagram, Stub, components, geodesic, validate
from .dsl import parse, render, to_json
from .novikov import analyze, classify_vertices, gamma_prime, novikov_homology, presentation_matrix
from .strata import hyperplane_forms, stratum_constancy_check, sweep

__version__ = "0.1.0"

__all__ = [
    "Arrow", "Edge", "NovikovModule", "SpliceDiagram", "Stub",
    "analyze", "classify_vertices", "cokernel", "components", "fiber_multiplicity",
    "gamma_prime", "geodesic", "hyperplane_forms", "is_fibered", "linking", "minimize",
    "normalize", "novikov_homology", "parse", "presentation_matrix", "reduce", "render",
    "smith_normal_form", "splice", "split", "stratum_constancy_check", "sweep", "to_json",
    "validate",
]
