"""Interlinked-cycle structures with interlocked outer cycles.

Validation of the structural conditions, the outer-cycle family and its
lemma checks, the maximum disjoint outer-cycle algorithm, brute-force
oracles, and the XOR index code with GF(2) decodability.
"""

from __future__ import annotations

from .codec import IndexCode, build_toj_code, check_decodable, length_report, receivers
from .digraph import Cycle, Digraph, ParseError, enumerate_cycles, parse_text
from .disjoint import DisjointCycleResult, StructureError, max_disjoint
from .fixtures import GeneratorConfig, generate, load_fixture
from .ic_check import ICStructure, inner_partition, validate
from .oracle import OracleRefusal, oracle_mais, oracle_max_disjoint, oracle_min_hitting
from .outer_cycles import CycleFamily, build_family, central_cycles, check_ilc, verify_lemmas

__version__ = "0.1.0"

__all__ = [
    "Cycle", "CycleFamily", "Digraph", "DisjointCycleResult", "GeneratorConfig", "ICStructure",
    "IndexCode", "OracleRefusal", "ParseError", "StructureError", "build_family", "build_toj_code",
    "central_cycles", "check_decodable", "check_ilc", "enumerate_cycles", "generate", "inner_partition",
    "length_report", "load_fixture", "max_disjoint", "oracle_mais", "oracle_max_disjoint",
    "oracle_min_hitting", "parse_text", "receivers", "validate", "verify_lemmas",
]
