"""Circular block decomposition, alternating sequences and block censuses."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from .sequence import SignRow, as_row


class DegenerateRowError(ValueError):
    """Constant rows have no block boundary, so block statistics are undefined."""


class ContextError(ValueError):
    pass


class UnclassifiableSequenceError(ValueError):
    def __init__(self, message: str, row: Optional[SignRow] = None, length=None, contribution=None):
        super().__init__(message)
        self.row = row
        self.length = length
        self.contribution = contribution


class Kind(str, Enum):
    """Size class of a block, and the kind of alternating sequence built from it."""

    ONE = "one-alt"
    TWO = "two-alt"
    GEQ3 = "geq3-alt"

    @classmethod
    def of(cls, length: int) -> "Kind":
        if length == 1:
            return cls.ONE
        if length == 2:
            return cls.TWO
        return cls.GEQ3


_KIND_BY_LENGTH = (None, Kind.ONE, Kind.TWO)


@dataclass(frozen=True)
class Block:
    sign: int
    length: int
    start: int

    @property
    def kind(self) -> Kind:
        return _KIND_BY_LENGTH[self.length] if self.length < 3 else Kind.GEQ3


@dataclass(frozen=True)
class BlockDecomposition:
    row: SignRow
    blocks: tuple[Block, ...]
    offset: int
    degenerate: bool

    @property
    def n(self) -> int:
        return self.row.n

    def __len__(self) -> int:
        return len(self.blocks)

    def lengths(self) -> list[int]:
        return [b.length for b in self.blocks]


@dataclass(frozen=True)
class AlternatingSequence:
    kind: Kind
    first: int  # index of the first member in the decomposition's block list
    blocks: tuple[Block, ...]
    left_context: Optional[Kind]
    right_context: Optional[Kind]

    @property
    def length(self) -> int:
        return len(self.blocks)

    @property
    def start(self) -> int:
        return self.blocks[0].start

    def positions(self, n: int) -> list[int]:
        return [(b.start + i) % n for b in self.blocks for i in range(b.length)]


@dataclass(frozen=True)
class BlockCensus:
    n: int
    total: int
    b: dict[int, int]
    b_geq: dict[int, int]
    alpha1: int
    alpha2: int
    alpha_geq3: int
    alpha_geq2: int
    alpha_2_geq3: int
    alpha1_types: Optional[tuple[int, ...]] = None
    alpha2_types: Optional[tuple[int, ...]] = None
    sequence_lengths: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def count(self, k: int) -> int:
        """|B_k|"""
        return self.b.get(k, 0)

    def count_geq(self, k: int) -> int:
        """|B_{>=k}|"""
        if k <= 1:
            return self.total
        return self.b_geq.get(k, 0)


def decompose(row) -> BlockDecomposition:
    """Maximal circular same-sign runs, listed from the first sign change.

    The listing starts at the smallest index j with x[j] != x[j-1], so the
    first and last listed blocks carry opposite signs.
    """
    row = as_row(row)
    x = row.entries
    n = len(x)
    offset = next((j for j in range(n) if x[j] != x[j - 1]), None)
    if offset is None:
        return BlockDecomposition(row, (Block(x[0], n, 0),), 0, True)
    blocks = []
    i = 0
    while i < n:
        j = i + 1
        sign = x[(offset + i) % n]
        while j < n and x[(offset + j) % n] == sign:
            j += 1
        blocks.append(Block(sign, j - i, (offset + i) % n))
        i = j
    return BlockDecomposition(row, tuple(blocks), offset, False)


def _require(d: BlockDecomposition) -> None:
    if d.degenerate:
        raise DegenerateRowError(f"constant row of order {d.n} has no blocks to count")


def _kinds(d: BlockDecomposition) -> list[Kind]:
    return [Kind.GEQ3 if b.length >= 3 else _KIND_BY_LENGTH[b.length] for b in d.blocks]


def _runs(d: BlockDecomposition, kind: Kind, kinds: Optional[list[Kind]] = None) -> list[AlternatingSequence]:
    blocks = d.blocks
    nb = len(blocks)
    if kinds is None:
        kinds = _kinds(d)
    if all(k is kind for k in kinds):
        return [AlternatingSequence(kind, 0, blocks, None, None)]
    # start scanning just after a block of another class so no run wraps the scan
    base = next(i for i in range(nb) if kinds[i] is not kind)
    out = []
    run: list[int] = []
    for t in range(1, nb + 1):
        i = (base + t) % nb
        if kinds[i] is kind:
            run.append(i)
        elif run:
            out.append(run)
            run = []
    if run:
        out.append(run)
    seqs = [
        AlternatingSequence(
            kind,
            r[0],
            tuple(blocks[i] for i in r),
            kinds[(r[0] - 1) % nb],
            kinds[(r[-1] + 1) % nb],
        )
        for r in out
    ]
    seqs.sort(key=lambda s: s.first)
    return seqs


def alternating_sequences(d: BlockDecomposition, kind) -> list[AlternatingSequence]:
    """All maximal runs of blocks of one size class, ordered by first block."""
    _require(d)
    return _runs(d, Kind(kind))


def contexts_resolve(d: BlockDecomposition) -> bool:
    """True when no single alternating sequence covers the whole circle."""
    return not d.degenerate and len({b.kind for b in d.blocks}) > 1


def census(d: BlockDecomposition, with_types: bool = True) -> BlockCensus:
    """Block and alternating-sequence counts.

    Sequence types need shift 4 (n > 4) and resolvable contexts; otherwise,
    or with ``with_types=False``, the type fields stay None.
    """
    _require(d)
    lengths = d.lengths()
    b = dict(sorted(Counter(lengths).items()))
    top = max(lengths)
    b_geq = {}
    acc = 0
    for k in range(top, 1, -1):
        acc += b.get(k, 0)
        b_geq[k] = acc
    b_geq = dict(sorted(b_geq.items()))
    nb = len(d.blocks)
    kinds = _kinds(d)
    present = set(kinds)
    runs = {kind: _runs(d, kind, kinds) if kind in present else [] for kind in Kind}
    pairs = sum(1 for i in range(nb) if {kinds[i], kinds[(i + 1) % nb]} == {Kind.TWO, Kind.GEQ3})
    geq2 = [bl.length >= 2 for bl in d.blocks]
    alpha_geq2 = _count_runs(geq2)

    a1_types = a2_types = None
    if with_types and d.n > 4:
        try:
            a1_types, a2_types = sequence_type_counts(d)
        except (ContextError, UnclassifiableSequenceError):
            pass
    return BlockCensus(
        n=d.n,
        total=nb,
        b=b,
        b_geq=b_geq,
        alpha1=len(runs[Kind.ONE]),
        alpha2=len(runs[Kind.TWO]),
        alpha_geq3=len(runs[Kind.GEQ3]),
        alpha_geq2=alpha_geq2,
        alpha_2_geq3=pairs,
        alpha1_types=a1_types,
        alpha2_types=a2_types,
        sequence_lengths={k.value: tuple(s.length for s in runs[k]) for k in Kind},
    )


def _count_runs(flags: list[bool]) -> int:
    """Number of maximal circular runs of True."""
    if all(flags):
        return 1
    nb = len(flags)
    return sum(1 for i in range(nb) if flags[i] and not flags[i - 1])


Structure = Union[AlternatingSequence, Block]


def _structures(d: BlockDecomposition) -> tuple[list[Structure], list[int]]:
    """Position partition: 1-alt sequences, 2-alt sequences and single >=3-blocks.

    Returns the structures and, per block index, the index of its structure.
    """
    structs: list[Structure] = []
    owner = [-1] * len(d.blocks)
    for kind in (Kind.ONE, Kind.TWO):
        if not any(bl.kind is kind for bl in d.blocks):
            continue
        for seq in _runs(d, kind):
            for t in range(seq.length):
                owner[(seq.first + t) % len(d.blocks)] = len(structs)
            structs.append(seq)
    for i, bl in enumerate(d.blocks):
        if bl.kind is Kind.GEQ3:
            owner[i] = len(structs)
            structs.append(bl)
    return structs, owner


def shift4_partition(d: BlockDecomposition) -> list[tuple[Structure, int]]:
    """Equal-sign columns between the row and its 4-shift, split over structures.

    A column j (entries j and j+4 equal) belongs to the structure holding
    its midpoint j+2.  Exception: if the midpoint is the first (last)
    position of a block of length >= 3 whose preceding (following) block is
    a 1-block, the column goes to that 1-block's alternating sequence.  The
    values sum to agreement_count(row, 4).
    """
    _require(d)
    n = d.n
    if n <= 4:
        raise ValueError(f"shift 4 needs order > 4, got {n}")
    x = d.row.entries
    blocks = d.blocks
    nb = len(blocks)
    structs, owner = _structures(d)
    block_at = [0] * n
    for i, bl in enumerate(blocks):
        for t in range(bl.length):
            block_at[(bl.start + t) % n] = i
    counts = [0] * len(structs)
    for j in range(n):
        if x[j] != x[(j + 4) % n]:
            continue
        p = (j + 2) % n
        i = block_at[p]
        bl = blocks[i]
        target = i
        if bl.length >= 3:
            if p == bl.start and blocks[(i - 1) % nb].length == 1:
                target = (i - 1) % nb
            elif p == (bl.start + bl.length - 1) % n and blocks[(i + 1) % nb].length == 1:
                target = (i + 1) % nb
        counts[owner[target]] += 1
    return list(zip(structs, counts))


def shift4_contribution(d: BlockDecomposition, structure: Structure) -> int:
    if isinstance(structure, Block) and structure.length < 3:
        raise ValueError("single blocks are partition units only when of length >= 3")
    if isinstance(structure, AlternatingSequence) and structure.kind is Kind.GEQ3:
        raise ValueError("geq3-alt sequences are split into single blocks for shift 4")
    for s, c in shift4_partition(d):
        if s == structure:
            return c
    raise ValueError("structure does not belong to this decomposition")


def classify_two_alt(seq: AlternatingSequence) -> int:
    """Type 1: >=3-blocks on both sides; 2: one side each; 3: 1-alt sequences on both sides."""
    if seq.kind is not Kind.TWO:
        raise ValueError(f"expected a two-alt sequence, got {seq.kind.value}")
    ctx = (seq.left_context, seq.right_context)
    if None in ctx or Kind.TWO in ctx:
        raise ContextError("two-alt sequence without a 1-block or >=3-block on each side")
    ones = ctx.count(Kind.ONE)
    return ones + 1


def classify_one_alt(seq: AlternatingSequence, c: int) -> int:
    """Type from the measured shift-4 contribution c of a 1-alt sequence of length l.

    Contributions 3, 2 (l = 1) give types 1, 2; l, l-1, l-2 give types 4, 5, 6.
    Any other contribution of a single 1-block is type 3; a longer sequence
    matching none of the above is unclassifiable.
    """
    if seq.kind is not Kind.ONE:
        raise ValueError(f"expected a one-alt sequence, got {seq.kind.value}")
    ell = seq.length
    if ell == 1 and c == 3:
        return 1
    if ell == 1 and c == 2:
        return 2
    if c == ell:
        return 4
    if c == ell - 1:
        return 5
    if c == ell - 2:
        return 6
    if ell == 1:
        return 3
    raise UnclassifiableSequenceError(
        f"one-alt sequence of length {ell} at {seq.start} has contribution {c}",
        length=ell,
        contribution=c,
    )


def sequence_type_counts(d: BlockDecomposition) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(alpha1^1..alpha1^6, alpha2^1..alpha2^3) for a row of order > 4."""
    a1 = [0] * 6
    a2 = [0] * 3
    for s, c in shift4_partition(d):
        if isinstance(s, Block):
            continue
        if s.kind is Kind.ONE:
            try:
                a1[classify_one_alt(s, c) - 1] += 1
            except UnclassifiableSequenceError as exc:
                exc.row = d.row
                raise
        else:
            a2[classify_two_alt(s) - 1] += 1
    return tuple(a1), tuple(a2)
