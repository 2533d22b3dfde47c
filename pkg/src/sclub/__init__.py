"""Exact solvers, kernels and hardness-gadget generators for triangle and seeded s-clubs."""

from .errors import InapplicableError, InputError
from .graph import Graph, build_graph, diameter, neighborhood, truss_peel
from .properties import Certificate, ProblemSpec, Variant, verify
from .solve import SolveResult, brute_force_max, clique_max, solve_decision, solve_max

__all__ = [
    "Certificate",
    "Graph",
    "InapplicableError",
    "InputError",
    "ProblemSpec",
    "SolveResult",
    "Variant",
    "brute_force_max",
    "build_graph",
    "clique_max",
    "diameter",
    "neighborhood",
    "solve_decision",
    "solve_max",
    "truss_peel",
    "verify",
]
