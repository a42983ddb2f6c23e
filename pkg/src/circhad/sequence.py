"""Circular +/-1 rows, shift correlations and symmetries.

A row is stored as a tuple of +1/-1 entries.  Rows also have an integer
``mask`` encoding: position 0 is the most significant bit and a set bit
means +1.  With that layout the numeric order of masks is the
lexicographic order of rows with -1 < +1, which is the order used for
canonical forms everywhere in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

ROTATION = "rotation"
NEGATION = "negation"
REVERSAL = "reversal"
SYMMETRIES = (ROTATION, NEGATION, REVERSAL)

PLUS_MINUS = "plus-minus"
ZERO_ONE = "zero-one"

_ALPHABETS = {
    PLUS_MINUS: {"+": 1, "-": -1},
    ZERO_ONE: {"1": 1, "0": -1},
}


class RowParseError(ValueError):
    """Row text that cannot be read; ``position`` is 1-based (None for empty input)."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position


class ShiftRangeError(ValueError):
    pass


@dataclass(frozen=True)
class SignRow:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if not entries:
            raise ValueError("a row needs at least one entry")
        for j, v in enumerate(entries):
            if v != 1 and v != -1:
                raise ValueError(f"entry {j} is {v!r}, expected +1 or -1")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, j: int) -> int:
        return self.entries[j % len(self.entries)]

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __str__(self) -> str:
        return format_row(self)

    @property
    def mask(self) -> int:
        m = 0
        for v in self.entries:
            m = (m << 1) | (v > 0)
        return m

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "SignRow":
        return cls(tuple(1 if (mask >> (n - 1 - j)) & 1 else -1 for j in range(n)))


def parse_row(text: str, alphabet: str = PLUS_MINUS) -> SignRow:
    """Read a row written as ``+``/``-`` or ``1``/``0`` (``1`` is +1)."""
    try:
        table = _ALPHABETS[alphabet]
    except KeyError:
        raise ValueError(f"unknown alphabet {alphabet!r}") from None
    if not text:
        raise RowParseError("empty row")
    entries = []
    for pos, ch in enumerate(text, start=1):
        try:
            entries.append(table[ch])
        except KeyError:
            raise RowParseError(
                f"illegal character {ch!r} at position {pos} for alphabet {alphabet}", pos
            ) from None
    return SignRow(tuple(entries))


def format_row(row: SignRow, alphabet: str = PLUS_MINUS) -> str:
    plus, minus = ("+", "-") if alphabet == PLUS_MINUS else ("1", "0")
    return "".join(plus if v > 0 else minus for v in row.entries)


def as_row(row) -> SignRow:
    """Accept a SignRow or '+'/'-' text."""
    if isinstance(row, SignRow):
        return row
    return parse_row(row)


def _check_shift(n: int, s: int, lo: int) -> None:
    if not lo <= s < n:
        raise ShiftRangeError(f"shift {s} outside [{lo}, {n - 1}] for order {n}")


def paf(row: SignRow, s: int) -> int:
    """Periodic autocorrelation: scalar product of the row with its s-shift."""
    x = row.entries
    n = len(x)
    _check_shift(n, s, 0)
    return sum(x[j] * x[(j + s) % n] for j in range(n))


def paf_table(row: SignRow) -> list[int]:
    """paf(row, s) for s = 1..n-1."""
    return [paf(row, s) for s in range(1, row.n)]


def agreement_count(row: SignRow, s: int) -> int:
    x = row.entries
    n = len(x)
    _check_shift(n, s, 1)
    return sum(1 for j in range(n) if x[j] == x[(j + s) % n])


def disagreement_count(row: SignRow, s: int) -> int:
    return row.n - agreement_count(row, s)


def row_sum(row: SignRow) -> int:
    return sum(row.entries)


def rotate(row: SignRow, k: int) -> SignRow:
    """Cyclic shift to the right: entry j moves to position j + k."""
    n = row.n
    if not 0 <= k < n:
        raise ShiftRangeError(f"rotation {k} outside [0, {n - 1}]")
    x = row.entries
    return SignRow(x[n - k:] + x[:n - k])


def negate(row: SignRow) -> SignRow:
    return SignRow(tuple(-v for v in row.entries))


def reverse(row: SignRow) -> SignRow:
    return SignRow(row.entries[::-1])


def _normalize_group(group: Iterable[str]) -> frozenset[str]:
    g = frozenset(group)
    if not g:
        raise ValueError("symmetry group needs at least one generator")
    unknown = g - set(SYMMETRIES)
    if unknown:
        raise ValueError(f"unknown symmetries: {sorted(unknown)}")
    return g


def orbit(row: SignRow, group: Iterable[str] = SYMMETRIES) -> set[SignRow]:
    """All images of ``row`` under the group generated by ``group``.

    Rotation and reversal generate the dihedral group; negation commutes
    with both, so every element is negation^a . reversal^b . rotation^k.
    """
    g = _normalize_group(group)
    bases = [row]
    if REVERSAL in g:
        bases.append(reverse(row))
    if NEGATION in g:
        bases += [negate(b) for b in bases]
    shifts = range(row.n) if ROTATION in g else (0,)
    return {rotate(b, k) for b in bases for k in shifts}


def canonical_form(row: SignRow, group: Iterable[str] = SYMMETRIES) -> SignRow:
    """Lexicographically smallest image of ``row`` (-1 < +1)."""
    return min(orbit(row, group), key=lambda r: r.mask)


def max_orthogonal_prefix(row: SignRow) -> int:
    """Largest k such that the first k rows of the circulant are mutually orthogonal."""
    n = row.n
    if n < 2:
        raise ValueError("order must be at least 2")
    for d in range(1, n):
        if paf(row, d) != 0:
            return d
    return n


def is_circulant_hadamard(row: SignRow) -> bool:
    return all(paf(row, s) == 0 for s in range(1, row.n))


@dataclass(frozen=True)
class OrderProfile:
    n: int
    m: Optional[int]
    h: Optional[int]
    conjecture_relevant: bool


def order_profile(n: int) -> OrderProfile:
    """Order facts: n = 4m with m = h^2, h odd, for any circulant Hadamard order n > 1."""
    if n < 1:
        raise ValueError("order must be positive")
    m = n // 4 if n % 4 == 0 else None
    h = None
    if m is not None:
        r = math.isqrt(m)
        if r * r == m and r % 2 == 1:
            h = r
    return OrderProfile(n=n, m=m, h=h, conjecture_relevant=(n == 1 or h is not None))


def square_root_sums(n: int) -> tuple[int, ...]:
    """Row sums s with s*s == n (the only sums a circulant Hadamard row can have)."""
    r = math.isqrt(n)
    if r * r != n:
        return ()
    return (-r, r) if r else (0,)
