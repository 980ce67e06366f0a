from fractions import Fraction

import pytest

from tropicount.ch import (CACHE_VERSION, Engine, InvalidKey, ch_invariant, ch_terms, degree_table,
                           load_cache, make_key, table_rows)

from published_values import DEGREE3_TABLE


@pytest.mark.parametrize("key, value", [
    ((3, (0,), (3,), 0), 8),
    ((3, (0, 0, 1), (0,), 2), -1),
    ((2, (0, 1), (0,), 0), -2),
    ((1, (0,), (1,), 1), 1),
    ((4, (), (4,), 0), 240),
])
def test_values(key, value):
    assert ch_invariant(key) == value


def test_degree3_table():
    got = [(a, b, [int(v) for v in vals]) for a, b, vals in degree_table(3)]
    assert got == DEGREE3_TABLE


def test_degree1_table():
    assert degree_table(1) == [((1,), (), [1]), ((), (1,), [1, 1])]


def test_invalid_keys():
    for key in [(0, (), (), 0), (2, (1,), (), 0), (1, (), (1,), 2), (1, (), (1,), -1)]:
        with pytest.raises(InvalidKey):
            make_key(*key)
    with pytest.raises(InvalidKey):
        ch_invariant((2, (1,), (), 0))


def test_terms_floor_with_fixed_end():
    terms = ch_terms((2, (2,), (), 0))
    assert len(terms) == 1
    t = terms[0]
    assert t.case == "D" and t.l == 1 and t.k == (1,)
    assert t.children == (make_key(1, (), (1,), 0),) and t.coefficient == 1


def test_terms_complex_point_pair():
    # the example term lives in formula (b) although r = 3 here
    terms = ch_terms((2, (), (2,), 1), "b")
    assert [t.case for t in terms] == ["B"]
    assert terms[0].k == (1, 1) and terms[0].coefficient == Fraction(-1, 2)
    assert terms[0].children == (make_key(2, (0, 1), (), 0),)
    assert sum(t.coefficient * ch_invariant(t.children[0]) for t in terms) == 1


def test_terms_line_through_point():
    with pytest.raises(InvalidKey):
        ch_terms((1, (1,), (), 0), "b")
    terms = ch_terms((1, (1,), (), 0))
    assert len(terms) == 1 and terms[0].case == "D" and terms[0].l == 0
    assert terms[0].alpha_rest == (1,) and terms[0].children == ()
    assert terms[0].coefficient == 1


def test_term_children_are_valid_and_smaller():
    for d in range(1, 5):
        for a, b, vals in degree_table(d):
            for s in range(len(vals)):
                key = make_key(d, a, b, s)
                for term in ch_terms(key):
                    for child in term.children:
                        assert make_key(*child) == child
                        assert (child.d, child.s, sum(child.beta)) < (key.d, key.s, sum(key.beta))


def test_real_point_bookkeeping():
    # moving a real point left: the children use r - 1 real points in total
    for a, b, vals in degree_table(4):
        for s in range(len(vals)):
            key = make_key(4, a, b, s)
            if key.r == 0:
                continue
            for term in ch_terms(key, "a"):
                if term.case == "D":
                    assert sum(c.r for c in term.children) == key.r - 1


def test_formulas_agree_up_to_degree_4():
    eng = Engine()
    for d in range(1, 5):
        for a, b, vals in degree_table(d, eng):
            for s in range(1, len(vals)):
                key = make_key(d, a, b, s)
                if key.r > 0:
                    assert eng.value(key, "a") == eng.value(key, "b")


def test_table_row_order():
    rows = table_rows(3)
    assert rows[0] == ((0, 0, 1), ()) and rows[-1] == ((), (3,))


def test_cache_round_trip(tmp_path):
    eng = Engine(str(tmp_path))
    degree_table(3, eng)
    eng.save()
    text = (tmp_path / "ch-memo.txt").read_text()
    assert text.splitlines()[0] == CACHE_VERSION
    assert "3;0;3;0;8" in text.splitlines()
    again = Engine(str(tmp_path))
    assert again.memo == eng.memo


def test_cache_version_mismatch(tmp_path):
    (tmp_path / "ch-memo.txt").write_text("some-other-version\n3;0;3;0;99\n")
    memo = {}
    assert load_cache(str(tmp_path), memo) == 0 and memo == {}
    assert Engine(str(tmp_path)).value((3, (), (3,), 0)) == 8


def test_env_cache(tmp_path, monkeypatch):
    import tropicount.ch as ch
    monkeypatch.setenv("TROPICOUNT_CACHE", str(tmp_path))
    monkeypatch.setattr(ch, "_default", None)
    assert ch.ch_invariant((2, (), (2,), 0)) == 1
    ch.default_engine().save()
    assert (tmp_path / "ch-memo.txt").exists()
    monkeypatch.setattr(ch, "_default", None)


def test_even_end_example():
    # same degree as the even-end enumeration example, two complex points
    assert ch_invariant((2, (), (0, 1), 2)) == -1
    assert [ch_invariant((2, (), (0, 1), s)) for s in range(2)] == [0, 0]
