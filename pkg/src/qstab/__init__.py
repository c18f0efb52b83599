"""Stability numbers, convex quadratic bounds and their recognition."""

__version__ = "0.1.0"

from .graph import Graph, from_edge_list
from .io import from_graph6, to_graph6
from .qp import solve_p_tau, upsilon
from .oracle import alpha, max_stable_set
from .recognition import Verdict, recognize

__all__ = [
    "Graph",
    "Verdict",
    "alpha",
    "from_edge_list",
    "from_graph6",
    "max_stable_set",
    "recognize",
    "solve_p_tau",
    "to_graph6",
    "upsilon",
]
