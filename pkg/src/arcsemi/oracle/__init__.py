"""Brute-force ground truth computed by enumerating the semigroup."""

from .transformation import Transformation, arc_transform, compose, invariants_of, longest_cycle
from .semigroup import (
    DEFAULT_CAP,
    ElementCapExceeded,
    SemigroupTable,
    default_cap,
    generate,
    l_brute,
    l_of_table,
)
from .green import GreenStructure, OracleReport, green_structure, is_congruence_free, probe
