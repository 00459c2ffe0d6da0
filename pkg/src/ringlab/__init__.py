"""Relative non-commuting graphs of finite rings, their invariants, and relative isoclinism."""

from __future__ import annotations

from .catalog import build_catalog, load_pair, load_ring, parse_ring_file, read_report, serialize_ring, write_report
from .construct import construct, parse_shorthand
from .errors import RingLabError
from .graph import NCGraph, are_isomorphic, chromatic_index, classify, metrics, minimum_dominating_set
from .isoclinism import IsoWitness, find_isoclinism, theorem51_report, verify_witness
from .limits import DEFAULT_LIMITS, Limits
from .ring import FiniteRing, Subring, center, centralizer, enumerate_subrings, subring_generated
from .rncg import RingPair, build_rncg, commuting_probability, edge_count_via_formula, pair_report

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_LIMITS",
    "FiniteRing",
    "IsoWitness",
    "Limits",
    "NCGraph",
    "RingLabError",
    "RingPair",
    "Subring",
    "are_isomorphic",
    "build_catalog",
    "build_rncg",
    "center",
    "centralizer",
    "chromatic_index",
    "classify",
    "commuting_probability",
    "construct",
    "edge_count_via_formula",
    "enumerate_subrings",
    "find_isoclinism",
    "load_pair",
    "load_ring",
    "metrics",
    "minimum_dominating_set",
    "pair_report",
    "parse_ring_file",
    "parse_shorthand",
    "read_report",
    "serialize_ring",
    "subring_generated",
    "theorem51_report",
    "verify_witness",
    "write_report",
]
