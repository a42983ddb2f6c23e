"""Pruned, symmetry-reduced exhaustive search over circular +/-1 rows."""

from .engine import (
    DEFAULT_MAX_NODES,
    MAX_ORDER,
    OrderVerdict,
    SearchConfig,
    SearchConfigError,
    SearchFailed,
    SearchResult,
    corpus_with_prefix,
    enumerate_rows,
    find_max_k,
    verify_conjecture_range,
)

__all__ = [
    "DEFAULT_MAX_NODES",
    "MAX_ORDER",
    "OrderVerdict",
    "SearchConfig",
    "SearchConfigError",
    "SearchFailed",
    "SearchResult",
    "corpus_with_prefix",
    "enumerate_rows",
    "find_max_k",
    "verify_conjecture_range",
]
