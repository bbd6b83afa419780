"""Exact counts of balanced (p, N)-edge numberings on trivalent graphs."""

from .admissibility import LevelParams, is_admissible, is_admissible_hat, enumerate_admissible
from .graph import TrivalentGraph, catalog, generate_trivalent, genus
from .enumeration import count_brute, count_dp, CountReport

__all__ = [
    "LevelParams",
    "is_admissible",
    "is_admissible_hat",
    "enumerate_admissible",
    "TrivalentGraph",
    "catalog",
    "generate_trivalent",
    "genus",
    "count_brute",
    "count_dp",
    "CountReport",
]
