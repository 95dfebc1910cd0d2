"""Semigroups generated by the arc idempotents of a digraph.

Fast structural classifiers, a brute-force enumeration oracle that checks
them, and the cycle-length statistic l with its linear-time decision.
"""

from .classifier import PROPERTIES, PropertyReport, Verdict, classify
from .cyclelength import LDecision, decide_l_leq_k, l_of, oplus_l
from .digraph import Digraph, Graph, ParseError, format_digraph, parse_digraph
from .oracle import Transformation, generate, l_brute, probe

__version__ = "0.1.0"

__all__ = [
    "PROPERTIES",
    "Digraph",
    "Graph",
    "LDecision",
    "ParseError",
    "PropertyReport",
    "Transformation",
    "Verdict",
    "classify",
    "decide_l_leq_k",
    "format_digraph",
    "generate",
    "l_brute",
    "l_of",
    "oplus_l",
    "parse_digraph",
    "probe",
]
