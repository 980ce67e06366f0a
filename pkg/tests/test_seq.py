from math import comb

import pytest
from hypothesis import given, strategies as st

from tropicount.seq import (InvalidMultinomial, canon, enumerate_splits, format_seq, multinomial,
                            parse_seq, seq_add, seq_multinomial, stats)

small_seqs = st.lists(st.integers(0, 3), max_size=4).map(canon)


@pytest.mark.parametrize("a, expected", [((3, 1), (4, 5)), ((), (0, 0)), ((0, 0, 1), (1, 3))])
def test_stats(a, expected):
    assert stats(a) == expected


@pytest.mark.parametrize("n, parts, expected", [(4, [2, 1, 1], 12), (2, [2], 1), (3, [1, 1, 1], 6)])
def test_multinomial(n, parts, expected):
    assert multinomial(n, parts) == expected


def test_multinomial_errors():
    with pytest.raises(InvalidMultinomial):
        multinomial(2, [2, 1])
    with pytest.raises(InvalidMultinomial):
        multinomial(2, [-1])


@pytest.mark.parametrize("a, parts, expected", [
    ((3, 1), [(2, 0), (1, 1)], 3),
    ((2,), [(1,), (1,)], 2),
    ((1, 1), [(1, 1)], 1),
])
def test_seq_multinomial(a, parts, expected):
    assert seq_multinomial(a, parts) == expected


def test_seq_multinomial_violation():
    with pytest.raises(InvalidMultinomial):
        seq_multinomial((1,), [(1,), (1,)])


def test_splits_examples():
    assert set(enumerate_splits((1,), 2)) == {((), (1,)), ((1,), ())}
    assert len(list(enumerate_splits((2,), 2))) == 3
    assert set(enumerate_splits((1, 1), 1, "at_most")) == {((),), ((1,),), ((0, 1),), ((1, 1),)}


def test_serialization():
    assert format_seq((0, 0, 1, 0)) == "0,0,1"
    assert format_seq(()) == "0"
    assert parse_seq("0") == ()
    assert parse_seq("(0,1)") == (0, 1)


@given(small_seqs, small_seqs)
def test_stats_additive(a, b):
    sa, sb = stats(a), stats(b)
    assert stats(seq_add(a, b)) == (sa[0] + sb[0], sa[1] + sb[1])


@given(small_seqs, st.integers(0, 3))
def test_split_count(a, l):
    got = list(enumerate_splits(a, l))
    assert len(got) == len(set(got))
    expected = 1
    for x in a:
        expected *= comb(x + l - 1, l - 1) if l else (1 if x == 0 else 0)
    if l == 0 and not a:
        expected = 1
    assert len(got) == expected
    for parts in got:
        total = ()
        for p in parts:
            total = seq_add(total, p)
        assert total == a


@given(small_seqs, st.integers(1, 3))
def test_ordered_splits_match_multinomials(a, l):
    # every split of the multiset with a given multiplicity vector is counted
    # by seq_multinomial; summing over all splits gives l^|a|
    total = sum(seq_multinomial(a, parts) for parts in enumerate_splits(a, l))
    assert total == l ** sum(a)


@given(small_seqs)
def test_format_round_trip(a):
    assert parse_seq(format_seq(a)) == a
