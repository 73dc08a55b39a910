"""
Diagram output in Graphviz DOT.
"""

from .dot import RenderOptions, to_dot, to_trace_snapshot

__all__ = ["RenderOptions", "to_dot", "to_trace_snapshot"]
