"""Recognition, decomposition and coloring of ASP graphs.

A graph is ASP when no subdivision of K4 inside it has an unsubdivided part
shaped like P3 or P4, and ASP-P when C4 is excluded as well.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .chromatic import (
    Coloring,
    brooks_color3,
    chromatic_number_exact,
    color_asp,
    color_aspp,
    color_family,
    enumerate_colorings_boundary,
)
from .classifier import Classification, FamilyTag, classify, classify_3connected, classify_v3c, is_fishpond
from .errors import (
    AspKitError,
    ColoringInconsistency,
    GraphError,
    K5Exception,
    K6Exception,
    NotASP,
    NotASPP,
    PreconditionViolated,
    SizeLimitExceeded,
)
from .graph import Graph, normalize_threads, skeleton_view
from .io import parse_graph, read_graph, write_graph
from .oracle import Shape, Verdict, find_forbidden, oracle_classify, oracle_verdict
from .receptacles import is_asp_via_receptacles, receptacles

__all__ = [
    "AspKitError", "Classification", "Coloring", "ColoringInconsistency", "FamilyTag", "Graph", "GraphError",
    "K5Exception", "K6Exception", "NotASP", "NotASPP", "PreconditionViolated", "Shape", "SizeLimitExceeded",
    "Verdict", "brooks_color3", "chromatic_number_exact", "classify", "classify_3connected", "classify_v3c",
    "color_asp", "color_aspp", "color_family", "enumerate_colorings_boundary", "find_forbidden",
    "is_asp_via_receptacles", "is_fishpond", "normalize_threads", "oracle_classify", "oracle_verdict",
    "parse_graph", "read_graph", "receptacles", "skeleton_view", "write_graph",
]
