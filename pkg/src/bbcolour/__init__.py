"""Backbone colouring of chordal graphs: constructive algorithms, exact
solvers, structural toolkits and instance generators."""
from .graph import (
    BackboneInstance,
    Colouring,
    Graph,
    IncompleteColouringError,
    VerificationReport,
    connected_components,
    is_bipartite,
    is_c4_free,
    is_forest,
    verify_backbone_colouring,
    verify_circular_colouring,
)
from .io import FormatError, parse_colouring, parse_instance, serialize_colouring, serialize_instance

__all__ = [
    "BackboneInstance", "Colouring", "Graph", "IncompleteColouringError", "VerificationReport",
    "connected_components", "is_bipartite", "is_c4_free", "is_forest",
    "verify_backbone_colouring", "verify_circular_colouring",
    "FormatError", "parse_colouring", "parse_instance", "serialize_colouring", "serialize_instance",
]
