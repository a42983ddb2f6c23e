from __future__ import annotations

import random

import pytest

from circhad.blocks import BlockCensus, DegenerateRowError, census, decompose
from circhad.identities import (
    CASES,
    ConstructionError,
    ConstructionSpec,
    OrderError,
    case_block_sizes,
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_lemma4,
    check_lemma5,
    construct_case,
    exclusion_filter,
    lemma5_sides,
    predicted_paf4,
)
from circhad.search import SearchConfig, enumerate_rows
from circhad.sequence import format_row, order_profile, paf


def _sides(rep):
    return rep.preconditions_met, rep.holds, rep.lhs, rep.rhs


def test_block_total_examples():
    assert _sides(check_lemma1("-+++")) == (True, True, 2, 2)
    assert _sides(check_lemma1("+---+---")) == (True, True, 4, 4)
    rep = check_lemma1("++++----")
    assert not rep.preconditions_met and rep.pafs[1] == 4 and not rep.falsified
    assert rep.detail["equivalence"]


def test_one_block_count_examples():
    assert _sides(check_lemma2("-+++")) == (True, True, 1, 1)
    assert _sides(check_lemma2("+---+---")) == (True, True, 2, 2)
    rep = check_lemma2("++--++--")
    assert not rep.preconditions_met and rep.pafs[2] == -8


def test_two_block_plus_alpha1_examples():
    assert _sides(check_lemma3("-+++")) == (True, True, 1, 1)
    assert _sides(check_lemma3("+---+---")) == (True, True, 2, 2)


def test_alternation_balance_examples():
    assert _sides(check_lemma4("-+++")) == (True, True, 1, 1)
    assert _sides(check_lemma4("+---+---")) == (True, True, 2, 2)


def test_shift4_identity_examples():
    with pytest.raises(OrderError):
        check_lemma5("-+++")
    rep = check_lemma5("+---+---")
    assert not rep.preconditions_met and rep.pafs[4] == 8


def test_checker_order_and_degenerate_errors():
    with pytest.raises(OrderError):
        check_lemma1("+-+--+")
    with pytest.raises(DegenerateRowError):
        check_lemma1("++++")


def test_n12_corpus_shift3_identities():
    rows = enumerate_rows(SearchConfig(n=12, K=3)).canonical_witnesses
    assert rows
    for row in rows:
        rep = check_lemma3(row)
        assert rep.preconditions_met and rep.holds and rep.lhs == 3
        assert check_lemma4(row).holds


@pytest.mark.parametrize("n", [12, 16, 20])
def test_shift4_identity_on_small_corpora(n):
    rows = enumerate_rows(SearchConfig(n=n, K=4)).canonical_witnesses
    assert rows
    for row in rows:
        rep = check_lemma5(row)
        assert rep.preconditions_met and rep.holds, format_row(row)
        bd = rep.breakdown
        assert bd.lhs == bd.rhs == lemma5_sides(bd.alpha1_types, bd.alpha2_types)


def test_construct_examples():
    assert format_row(construct_case(ConstructionSpec("alpha1-eq-m", 2))) == "+---+---"
    assert case_block_sizes(ConstructionSpec("alpha1-eq-1-pre", 5)) == [7, 1, 1, 1, 1, 1, 2, 2, 2, 2]
    sizes = case_block_sizes(ConstructionSpec("alpha1-eq-1-split", 5, 2))
    assert sum(sizes) == 20
    assert [s for s in sizes if s != 1] == [2, 2, 7, 2, 2]
    assert predicted_paf4(ConstructionSpec("alpha1-eq-m", 2)) == 8
    assert predicted_paf4(ConstructionSpec("alpha1-eq-1-pre", 5)) == 8
    assert predicted_paf4(ConstructionSpec("alpha1-eq-m-minus-1-a", 5)) == 4


def test_construct_rejects_bad_specs():
    for spec in (
        ConstructionSpec("alpha1-eq-1-split", 4, 5),
        ConstructionSpec("alpha1-eq-1-split", 4),
        ConstructionSpec("alpha1-eq-m", 4, 1),
        ConstructionSpec("alpha1-eq-m", 1),
        ConstructionSpec("nope", 4),
    ):
        with pytest.raises(ConstructionError):
            construct_case(spec)


def _specs(m_max):
    for case in CASES:
        for m in range(2, m_max + 1):
            if case == "alpha1-eq-1-split":
                for k1 in range(1, m - 1):
                    yield ConstructionSpec(case, m, k1)
            elif case.startswith("alpha1-eq-m-minus-1") and m < 3:
                continue
            else:
                yield ConstructionSpec(case, m)


def test_constructions_have_order_4m_and_stated_alpha1():
    for spec in _specs(30):
        row = construct_case(spec)
        assert row.n == 4 * spec.m
        a1 = census(decompose(row), with_types=False).alpha1
        expected = {"alpha1-eq-m": spec.m}.get(spec.case, 1 if "eq-1" in spec.case else spec.m - 1)
        assert a1 == expected, spec
        assert paf(row, 4) == predicted_paf4(spec), spec


def _reference_verdict(a1, m):
    if m > 10 and a1 in (1, 2, m - 1, m):
        return True
    return m == 9 and a1 == 2


def test_exclusion_examples():
    def cen(a1):
        return BlockCensus(n=0, total=0, b={}, b_geq={}, alpha1=a1, alpha2=0, alpha_geq3=0, alpha_geq2=0, alpha_2_geq3=0)

    assert str(exclusion_filter(cen(1), order_profile(100))) == "EXCLUDED(alpha1=1)"
    assert str(exclusion_filter(cen(2), order_profile(196))) == "EXCLUDED(alpha1=2)"
    assert str(exclusion_filter(cen(5), order_profile(196))) == "UNDECIDED"
    assert str(exclusion_filter(cen(48), order_profile(196))) == "EXCLUDED(alpha1=m-1)"
    assert str(exclusion_filter(cen(49), order_profile(196))) == "EXCLUDED(alpha1=m)"
    with pytest.raises(OrderError):
        exclusion_filter(cen(1), order_profile(10))


def test_exclusion_random_agrees_with_reference():
    rng = random.Random(7)
    for _ in range(500):
        m = rng.randint(1, 200)
        a1 = rng.randint(0, m)
        c = BlockCensus(n=4 * m, total=0, b={}, b_geq={}, alpha1=a1, alpha2=0, alpha_geq3=0, alpha_geq2=0, alpha_2_geq3=0)
        assert exclusion_filter(c, order_profile(4 * m)).excluded == _reference_verdict(a1, m)
