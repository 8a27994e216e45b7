"""Maximal approximate palindromes under an edit-error budget.

The scan walks error levels over grid diagonals per center, extending
runs of matches in constant time through an LCE index; two pruning
variants retire diagonals that can no longer contribute.  Submodules:
symbols (alphabets, relations, corpora), lce (suffix-array LCE oracle),
engine (single-center scan and oracles), palindromes (whole-string
scanning), bench (corpus gain experiments), expected (expectations over
uniform random strings), cli (command line).
"""
from .engine import (
    CenterConfig,
    CenterOutcome,
    EditOp,
    EditScript,
    IterationStats,
    Parity,
    Variant,
    approx_pattern_match,
    dp_oracle,
    k_differences_scan,
    oracle_maximal,
    reconstruct_script,
    render_script,
    string_iterations,
)
from .lce import (
    LceOracle,
    PairOracle,
    build_lce,
    build_pair_oracle,
    lce_query,
    lce_views,
)
from .palindromes import (
    BOTH_PARITIES,
    PalindromeResult,
    ScanReport,
    is_trivial_center,
    maximal_at_center,
    scan_all,
    verify_result,
)
from .symbols import (
    CORPUS_KINDS,
    DNA_COMPLEMENT,
    IDENTITY,
    CorpusSpec,
    MatchRelation,
    SymbolString,
    encode_text,
    gen_corpus,
    make_complement_relation,
    reverse,
)

__all__ = [
    "BOTH_PARITIES",
    "CORPUS_KINDS",
    "CenterConfig",
    "CenterOutcome",
    "CorpusSpec",
    "DNA_COMPLEMENT",
    "EditOp",
    "EditScript",
    "IDENTITY",
    "IterationStats",
    "LceOracle",
    "MatchRelation",
    "PairOracle",
    "PalindromeResult",
    "Parity",
    "ScanReport",
    "SymbolString",
    "Variant",
    "approx_pattern_match",
    "build_lce",
    "build_pair_oracle",
    "dp_oracle",
    "encode_text",
    "gen_corpus",
    "is_trivial_center",
    "k_differences_scan",
    "lce_query",
    "lce_views",
    "make_complement_relation",
    "maximal_at_center",
    "oracle_maximal",
    "reconstruct_script",
    "render_script",
    "reverse",
    "scan_all",
    "string_iterations",
    "verify_result",
]

__version__ = "0.1.0"
