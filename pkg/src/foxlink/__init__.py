"""Exact invariants of link and tangle diagrams over small rings."""

__version__ = "0.1.0"

from .diagram import Diagram, Crossing, DiagramError, parse_pd, parse_braid, braid_closure

__all__ = [
    "Diagram",
    "Crossing",
    "DiagramError",
    "parse_pd",
    "parse_braid",
    "braid_closure",
    "__version__",
]
