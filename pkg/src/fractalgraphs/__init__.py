"""Hierarchical scale-free graphs generated from graph-directed fractals."""

from .base_graph import BaseGraph, load_base_graph, parse_base_graph
from .hiergraph import HierGraphView
from .kernels import BACKEND

__all__ = ["BACKEND", "BaseGraph", "HierGraphView", "load_base_graph", "parse_base_graph"]
__version__ = "0.1.0"
