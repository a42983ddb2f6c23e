from __future__ import annotations

import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional

import numpy as np

from ..sequence import NEGATION, REVERSAL, ROTATION, SYMMETRIES, SignRow, square_root_sums
from . import _kernel

log = logging.getLogger(__name__)

MAX_ORDER = 62  # masks live in int64
DEFAULT_MAX_NODES = 1 << 42
SPLIT_DEPTH = 14  # work units are the surviving prefixes of this length


class SearchConfigError(ValueError):
    pass


class SearchFailed(RuntimeError):
    """Search stopped before exhausting the tree; ``result`` holds the partial progress."""

    def __init__(self, message: str, result: "SearchResult"):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class SearchConfig:
    n: int
    K: int
    symmetry: frozenset = frozenset(SYMMETRIES)
    row_sum_filter: Optional[bool] = None  # None: on exactly when K = n - 1
    alpha1: Optional[frozenset] = None
    jobs: int = 1
    limit: Optional[int] = None
    max_nodes: int = DEFAULT_MAX_NODES

    def __post_init__(self):
        object.__setattr__(self, "symmetry", frozenset(self.symmetry))
        if self.alpha1 is not None:
            object.__setattr__(self, "alpha1", frozenset(self.alpha1))

    def validate(self, allow_zero_shift: bool = False) -> None:
        n, K = self.n, self.K
        if not 1 <= n <= MAX_ORDER:
            raise SearchConfigError(f"order {n} outside [1, {MAX_ORDER}]")
        lo = 0 if allow_zero_shift else 1
        if not lo <= K <= max(n - 1, lo):
            raise SearchConfigError(f"shift budget K={K} outside [{lo}, {n - 1}] for n={n}")
        if n == 1 and not allow_zero_shift:
            raise SearchConfigError("order 1 has no shifts to constrain")
        if not self.symmetry or not self.symmetry <= set(SYMMETRIES):
            raise SearchConfigError(f"symmetry must be a nonempty subset of {SYMMETRIES}")
        if self.jobs < 1:
            raise SearchConfigError("jobs must be at least 1")
        if self.limit is not None and self.limit < 0:
            raise SearchConfigError("limit must be nonnegative")
        if self.row_sum_filter and K != n - 1:
            raise SearchConfigError("the row-sum filter only applies to full (K = n-1) searches")
        if self.max_nodes < 1:
            raise SearchConfigError("max_nodes must be positive")

    @property
    def uses_row_sum(self) -> bool:
        if self.row_sum_filter is None:
            return self.K == self.n - 1
        return self.row_sum_filter


@dataclass
class SearchResult:
    n: int
    K: int
    symmetry: tuple[str, ...]
    status: str
    masks: np.ndarray  # canonical witnesses, ascending
    orbit_sizes: np.ndarray
    count_total: int
    count_canonical: int
    max_k_overall: Optional[int]
    census_summary: dict[int, int]
    nodes_visited: int
    duration: float = 0.0
    truncated: bool = False
    notes: list[str] = field(default_factory=list)

    @cached_property
    def canonical_witnesses(self) -> list[SignRow]:
        return [SignRow.from_mask(int(m), self.n) for m in self.masks]

    def to_dict(self) -> dict:
        """JSON payload; timing and worker count are left out so output is reproducible."""
        return {
            "n": self.n,
            "K": self.K,
            "symmetry": list(self.symmetry),
            "status": self.status,
            "count_total": self.count_total,
            "count_canonical": self.count_canonical,
            "max_k_overall": self.max_k_overall,
            "nodes_visited": self.nodes_visited,
            "census_summary": {str(k): v for k, v in sorted(self.census_summary.items())},
            "witnesses_truncated": self.truncated,
            "witnesses": [str(w) for w in self.canonical_witnesses],
        }


def effective_shifts(n: int, K: int) -> np.ndarray:
    """Distinct constraints among paf(1..K), using paf(s) = paf(n - s)."""
    return np.array(sorted({min(s, n - s) for s in range(1, K + 1)}), dtype=np.int64)


def _flags(symmetry: Iterable[str]) -> tuple[bool, bool, bool]:
    g = set(symmetry)
    return ROTATION in g, NEGATION in g, REVERSAL in g


def _phase(args):
    n, shifts, prefixes, depth, stop, use_sum, h, flags, max_nodes = args
    status, nodes, leaves, wit, nwit, front, nfront = _kernel.run_subtrees(
        n, shifts, prefixes, depth, stop, use_sum, h, flags[0], flags[1], flags[2], max_nodes
    )
    return int(status), int(nodes), int(leaves), wit[:nwit].copy(), front[:nfront].copy()


def _chunks(a: np.ndarray, parts: int) -> list[np.ndarray]:
    if len(a) == 0:
        return []
    return [c for c in np.array_split(a, parts) if len(c)]


def _run(config: SearchConfig, progress: Optional[Callable[[str], None]] = None) -> SearchResult:
    n, K = config.n, config.K
    t0 = time.perf_counter()
    shifts = effective_shifts(n, K) if K else np.zeros(0, dtype=np.int64)
    flags = _flags(config.symmetry)
    sym = tuple(s for s in SYMMETRIES if s in config.symmetry)
    notes: list[str] = []

    use_sum = config.uses_row_sum
    sums = square_root_sums(n) if use_sum else ()
    if use_sum and not sums:
        notes.append(f"no integer row sum squares to {n}")
        return _assemble(config, sym, "OK", [], 0, 0, time.perf_counter() - t0, notes)
    h = abs(sums[0]) if sums else 0

    split = min(SPLIT_DEPTH, n)
    budget = config.max_nodes
    status, nodes, leaves, wit, front = _phase(
        (n, shifts, np.zeros((1, 0), dtype=np.int64), 0, split, use_sum, h, flags, budget)
    )
    found = [wit]
    if status == _kernel.STATUS_OK and len(front):
        if progress:
            progress(f"n={n} K={K}: {len(front)} subtrees at depth {split}")
        parts = max(1, config.jobs * 8) if config.jobs > 1 else 1
        chunks = _chunks(front, parts)
        if config.jobs > 1:
            tasks = [(n, shifts, c, split, n, use_sum, h, flags, budget) for c in chunks]
            with ProcessPoolExecutor(max_workers=config.jobs) as pool:
                outs = list(pool.map(_phase, tasks))
        else:
            outs = []
            spent = nodes
            for c in chunks:
                out = _phase((n, shifts, c, split, n, use_sum, h, flags, budget - spent))
                outs.append(out)
                spent += out[1]
                if out[0] != _kernel.STATUS_OK:
                    break
        for st, nd, lv, w, _ in outs:
            nodes += nd
            leaves += lv
            found.append(w)
            if st != _kernel.STATUS_OK:
                status = st
        if nodes > budget:
            status = _kernel.STATUS_NODE_CAP
    masks = np.sort(np.concatenate(found)) if found else np.zeros(0, dtype=np.int64)
    st = "OK" if status == _kernel.STATUS_OK else "FAILED"
    if st == "FAILED":
        notes.append(f"node cap {budget} exceeded after {nodes} nodes")
    res = _assemble(config, sym, st, masks, 2 * leaves, nodes, time.perf_counter() - t0, notes)
    if st == "FAILED":
        raise SearchFailed(notes[-1], res)
    return res


def _assemble(config, sym, status, masks, count_total, nodes, duration, notes) -> SearchResult:
    n = config.n
    masks = np.asarray(masks, dtype=np.int64)
    flags = _flags(config.symmetry)
    orb, a1, kmax = _kernel.witness_stats(masks, n, *flags)
    if status == "OK" and int(orb.sum()) != count_total:
        raise AssertionError(f"orbit sizes sum to {int(orb.sum())}, expected {count_total} rows")
    if config.alpha1 is not None:
        keep = np.isin(a1, np.array(sorted(config.alpha1), dtype=np.int64))
        masks, orb, a1, kmax = masks[keep], orb[keep], a1[keep], kmax[keep]
        count_total = int(orb.sum())
    summary = dict(sorted(Counter(int(v) for v in a1).items()))
    count_canonical = len(masks)
    truncated = config.limit is not None and count_canonical > config.limit
    shown = masks[: config.limit] if truncated else masks
    return SearchResult(
        n=n,
        K=config.K,
        symmetry=sym,
        status=status,
        masks=shown,
        orbit_sizes=orb[: len(shown)],
        count_total=int(count_total),
        count_canonical=count_canonical,
        max_k_overall=int(kmax.max()) if len(kmax) else None,
        census_summary=summary,
        nodes_visited=int(nodes),
        duration=duration,
        truncated=truncated,
        notes=notes,
    )


def enumerate_rows(config: SearchConfig, progress: Optional[Callable[[str], None]] = None) -> SearchResult:
    """All rows of order n with paf(1..K) = 0, reported as canonical orbit representatives.

    Raises SearchFailed (carrying the partial result) when the node cap is hit.
    """
    config.validate()
    return _run(config, progress)


def corpus_with_prefix(
    n: int,
    K: int,
    consumer: Optional[Callable[[SignRow], None]] = None,
    **options,
) -> list[SignRow]:
    res = enumerate_rows(SearchConfig(n=n, K=K, **options))
    rows = res.canonical_witnesses
    if consumer is not None:
        for r in rows:
            consumer(r)
    return rows


def find_max_k(n: int, **options) -> tuple[int, list[SignRow]]:
    """Largest orthogonal prefix over all rows of order n, with the rows attaining it.

    paf(s) = paf(n - s) means a prefix longer than n/2 forces a full
    circulant Hadamard row, so only K = n-1 and K < n/2 are tried.
    """
    if n < 2:
        raise SearchConfigError("order must be at least 2")
    res = enumerate_rows(SearchConfig(n=n, K=n - 1, **options))
    if res.count_canonical:
        return n, res.canonical_witnesses
    for K in range((n - 1) // 2, 0, -1):
        cfg = SearchConfig(n=n, K=K, **options)
        res = enumerate_rows(cfg)
        if res.count_canonical:
            return K + 1, res.canonical_witnesses
    cfg = SearchConfig(n=n, K=0, **options)
    cfg.validate(allow_zero_shift=True)
    return 1, _run(cfg).canonical_witnesses


@dataclass(frozen=True)
class OrderVerdict:
    n: int
    verdict: str  # EXISTS, NONE or SKIPPED-BY-SUM
    witnesses: int
    nodes_visited: int


def verify_conjecture_range(n_max: int, progress: Optional[Callable[[str], None]] = None, **options) -> list[OrderVerdict]:
    """Exhaustive circulant Hadamard check for every order 2..n_max.

    Orders with no integer row sum s, s*s = n, are skipped without search.
    """
    if not 4 <= n_max <= MAX_ORDER:
        raise SearchConfigError(f"n_max must lie in [4, {MAX_ORDER}]")
    out = []
    for n in range(2, n_max + 1):
        if not square_root_sums(n):
            out.append(OrderVerdict(n, "SKIPPED-BY-SUM", 0, 0))
            continue
        res = enumerate_rows(SearchConfig(n=n, K=n - 1, **options), progress)
        out.append(OrderVerdict(n, "EXISTS" if res.count_canonical else "NONE", res.count_canonical, res.nodes_visited))
        if progress:
            progress(f"n={n}: {out[-1].verdict}")
    return out
