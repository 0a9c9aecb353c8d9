"""Invariants, classification and smoothability of normal surface singularities."""
from .classify import SingularityReport, Verdict, analyze, classify, smoothability
from .dsl import emit_report, format_graph, parse_graph
from .graph_core import DualGraph, QDivisor, Vertex, is_negative_definite, recognize_shape

__all__ = [
    "DualGraph",
    "QDivisor",
    "SingularityReport",
    "Verdict",
    "Vertex",
    "analyze",
    "classify",
    "emit_report",
    "format_graph",
    "is_negative_definite",
    "parse_graph",
    "recognize_shape",
    "smoothability",
]
