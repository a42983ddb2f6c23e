from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from circhad.blocks import (
    AlternatingSequence,
    Block,
    ContextError,
    DegenerateRowError,
    Kind,
    UnclassifiableSequenceError,
    alternating_sequences,
    census,
    classify_one_alt,
    classify_two_alt,
    contexts_resolve,
    decompose,
    sequence_type_counts,
    shift4_contribution,
    shift4_partition,
)
from circhad.identities import predicted_agreement, predicted_disagreement3
from circhad.sequence import SignRow, agreement_count, disagreement_count, negate, parse_row, reverse, rotate

from oracles import agreement, census_oracle, circular_lengths

rows = st.lists(st.sampled_from([1, -1]), min_size=2, max_size=40).map(lambda v: SignRow(tuple(v)))
nondegenerate = rows.filter(lambda r: len(set(r.entries)) == 2)


def _blocks(text):
    return [("+" if b.sign > 0 else "-", b.length) for b in decompose(text).blocks]


def test_decompose_examples():
    d = decompose("-+++")
    assert _blocks("-+++") == [("-", 1), ("+", 3)] and d.offset == 0 and not d.degenerate
    d = decompose("++++")
    assert d.degenerate and _blocks("++++") == [("+", 4)]
    assert _blocks("++--++--") == [("+", 2), ("-", 2), ("+", 2), ("-", 2)]


def test_decompose_starts_after_sign_change():
    d = decompose("++-+--+")
    assert d.offset == 2
    assert d.blocks[0].sign != d.blocks[-1].sign
    assert [b.start for b in d.blocks] == [2, 3, 4, 6]


def test_census_examples():
    c = census(decompose("-+++"))
    assert (c.total, c.count(1), c.count(3), c.alpha1, c.alpha_geq3, c.alpha2, c.alpha_2_geq3) == (2, 1, 1, 1, 1, 0, 0)
    c = census(decompose("+---+---"))
    assert (c.total, c.count(1), c.count(3), c.alpha1, c.alpha_geq3, c.alpha_2_geq3) == (4, 2, 2, 2, 2, 0)
    c = census(decompose("++-+--"))
    assert (c.total, c.count(1), c.count(2), c.alpha1, c.alpha2, c.alpha_2_geq3) == (4, 2, 2, 1, 1, 0)
    assert c.sequence_lengths[Kind.ONE.value] == (2,)
    assert c.count_geq(2) == 2 and c.count_geq(1) == 4


def test_census_rejects_constant_row():
    with pytest.raises(DegenerateRowError):
        census(decompose("----"))
    with pytest.raises(DegenerateRowError):
        alternating_sequences(decompose("----"), Kind.ONE)


def test_alternating_sequence_examples():
    seqs = alternating_sequences(decompose("+-+---"), Kind.ONE)
    assert [s.length for s in seqs] == [3]
    seqs = alternating_sequences(decompose("++--++--"), "two-alt")
    assert [s.length for s in seqs] == [4]
    assert seqs[0].left_context is None
    seqs = alternating_sequences(decompose("-+++"), Kind.GEQ3)
    assert [s.length for s in seqs] == [1]


def test_wrapping_run_is_merged():
    # 1-blocks at both ends of the listing form one circular run
    row = parse_row("+-++--+-+---")
    seqs = alternating_sequences(decompose(row), Kind.ONE)
    assert sorted(s.length for s in seqs) == sorted(census_oracle("+-++--+-+---")["lengths"][1])


def test_shift4_examples():
    d = decompose("+---+---")
    parts = shift4_partition(d)
    assert sum(c for _, c in parts) == agreement_count(d.row, 4) == 8
    ones = [c for s, c in parts if isinstance(s, AlternatingSequence)]
    threes = [c for s, c in parts if isinstance(s, Block)]
    assert ones == [3, 3]
    assert threes == [1, 1]
    seq = alternating_sequences(d, Kind.ONE)[0]
    assert shift4_contribution(d, seq) == 3


def test_shift4_needs_order_above_4():
    with pytest.raises(ValueError):
        shift4_partition(decompose("-+++"))


def _seq(kind, length, left=Kind.GEQ3, right=Kind.GEQ3):
    return AlternatingSequence(kind, 0, tuple(Block(1, 1 if kind is Kind.ONE else 2, i) for i in range(length)), left, right)


def test_classify_two_alt():
    assert classify_two_alt(_seq(Kind.TWO, 2, Kind.GEQ3, Kind.GEQ3)) == 1
    assert classify_two_alt(_seq(Kind.TWO, 2, Kind.ONE, Kind.GEQ3)) == 2
    assert classify_two_alt(_seq(Kind.TWO, 1, Kind.ONE, Kind.ONE)) == 3
    with pytest.raises(ContextError):
        classify_two_alt(_seq(Kind.TWO, 4, None, None))
    with pytest.raises(ValueError):
        classify_two_alt(_seq(Kind.ONE, 1))


def test_classify_one_alt():
    assert classify_one_alt(_seq(Kind.ONE, 1), 3) == 1
    assert classify_one_alt(_seq(Kind.ONE, 1), 2) == 2
    assert classify_one_alt(_seq(Kind.ONE, 5), 4) == 5
    assert classify_one_alt(_seq(Kind.ONE, 1), 1) == 4
    assert classify_one_alt(_seq(Kind.ONE, 4), 4) == 4
    assert classify_one_alt(_seq(Kind.ONE, 4), 2) == 6
    assert classify_one_alt(_seq(Kind.ONE, 1), 5) == 3
    with pytest.raises(UnclassifiableSequenceError) as exc:
        classify_one_alt(_seq(Kind.ONE, 4), 7)
    assert (exc.value.length, exc.value.contribution) == (4, 7)


@given(nondegenerate)
def test_census_matches_oracle(row):
    text = str(row)
    c = census(decompose(row), with_types=False)
    o = census_oracle(text)
    assert c.total == o["total"]
    assert c.b == o["b"]
    assert (c.alpha1, c.alpha2, c.alpha_geq3, c.alpha_2_geq3) == (
        o["alpha1"], o["alpha2"], o["alpha_geq3"], o["alpha_2_geq3"],
    )
    for kind, cls in ((Kind.ONE, 1), (Kind.TWO, 2), (Kind.GEQ3, 3)):
        assert sorted(c.sequence_lengths[kind.value]) == sorted(o["lengths"][cls])


@given(rows)
def test_block_lengths_sum_to_n_and_alternate(row):
    d = decompose(row)
    assert sum(d.lengths()) == row.n
    assert d.lengths() == circular_lengths(str(row))
    if not d.degenerate:
        nb = len(d.blocks)
        for i, b in enumerate(d.blocks):
            assert b.sign != d.blocks[(i + 1) % nb].sign or nb == 1
            assert all(row[b.start + t] == b.sign for t in range(b.length))


@given(nondegenerate)
def test_universal_accounting(row):
    d = decompose(row)
    text = str(row)
    n = row.n
    assert predicted_agreement(d, 1) == agreement(text, 1)
    assert predicted_agreement(d, 2) == agreement(text, 2) if n > 2 else True
    if n > 3:
        assert predicted_agreement(d, 3) == agreement(text, 3)
    if contexts_resolve(d) and n > 3:
        assert predicted_disagreement3(d) == disagreement_count(row, 3)


@given(nondegenerate)
def test_alpha1_equals_runs_of_longer_blocks(row):
    c = census(decompose(row), with_types=False)
    if c.count(1) and c.count(1) < c.total:
        assert c.alpha1 == c.alpha_geq2


@given(nondegenerate.filter(lambda r: r.n > 4))
def test_shift4_partition_sums_to_agreement(row):
    parts = shift4_partition(decompose(row))
    assert sum(c for _, c in parts) == agreement_count(row, 4)
    assert all(c >= 0 for _, c in parts)


@given(nondegenerate.filter(lambda r: r.n > 4), st.integers(0, 100))
def test_census_invariant_under_symmetries(row, k):
    base = census(decompose(row))
    for img in (rotate(row, k % row.n), negate(row), reverse(row)):
        c = census(decompose(img))
        assert (c.total, c.b, c.alpha1, c.alpha2, c.alpha_geq3, c.alpha_2_geq3) == (
            base.total, base.b, base.alpha1, base.alpha2, base.alpha_geq3, base.alpha_2_geq3,
        )
        assert (c.alpha1_types, c.alpha2_types) == (base.alpha1_types, base.alpha2_types)


def test_exhaustive_universal_accounting_small():
    for n in range(4, 13):
        for bits in itertools.product((1, -1), repeat=n):
            row = SignRow(bits)
            d = decompose(row)
            if d.degenerate:
                continue
            text = str(row)
            assert predicted_agreement(d, 1) == agreement(text, 1)
            assert predicted_agreement(d, 2) == agreement(text, 2)
            assert predicted_agreement(d, 3) == agreement(text, 3)
            if contexts_resolve(d):
                assert predicted_disagreement3(d) == n - agreement(text, 3)


def test_shift3_form_needs_resolved_contexts():
    d = decompose("+-+-+-+-")
    assert not contexts_resolve(d)
    assert predicted_agreement(d, 3) == agreement("+-+-+-+-", 3) == 0
    with pytest.raises(ValueError):
        predicted_disagreement3(d)


def test_type_counts_add_up():
    d = decompose("+---+---")
    a1, a2 = sequence_type_counts(d)
    c = census(d)
    assert sum(a1) == c.alpha1 and sum(a2) == c.alpha2
