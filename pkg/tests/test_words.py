"""Word type, parsing, subword frequencies, regularity, structural ops."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twinlcs import (
    Word,
    distinguish,
    first_occurrence_permutation,
    frequency,
    frequency_table,
    is_regular,
    parse_word,
    signature,
    substitute,
)

words = st.integers(1, 4).flatmap(
    lambda k: st.lists(st.integers(1, k), max_size=12).map(
        lambda ls: Word(tuple(ls), k)))


# -- construction and parsing -------------------------------------------------


def test_word_validates_alphabet():
    with pytest.raises(ValueError):
        Word((1, 2), 1)
    with pytest.raises(ValueError):
        Word((0,), 2)
    with pytest.raises(ValueError):
        Word((), 0)
    assert len(Word((), 1)) == 0


def test_word_basic_ops():
    w = Word((1, 2, 2, 3), 3)
    assert w.reversed().letters == (3, 2, 2, 1)
    assert w.concat(Word((1,), 3)).letters == (1, 2, 2, 3, 1)
    assert w.restrict({2}).letters == (2, 2)
    assert w.restrict({2}).k == 3
    with pytest.raises(ValueError):
        w.concat(Word((1,), 2))


def test_parse_word_forms():
    assert parse_word("0110") == Word((1, 2, 2, 1), 2)
    assert parse_word("123") == Word((1, 2, 3), 3)
    assert parse_word("22") == Word((2, 2), 2)
    assert parse_word("k=4;w=1,2") == Word((1, 2), 4)
    assert parse_word("k=4;w=") == Word((), 4)
    for bad in ("", "1,2", "k=2;x=1", "12a"):
        with pytest.raises(ValueError):
            parse_word(bad)


def test_compact_rendering():
    w = Word((1, 2, 2, 1), 2)
    assert w.to_compact() == "1221"
    assert w.to_compact(zero_based=True) == "0110"
    with pytest.raises(ValueError):
        Word((1,), 10).to_compact()


@given(words)
def test_parse_round_trips(w):
    assert parse_word(w.to_text()) == w
    assert Word.from_json(w.to_json()) == w


def test_signature():
    sig = signature(Word((1, 2, 2, 3), 3))
    assert sig.counts == (1, 2, 1)
    assert sig.total == 4
    assert not sig.is_permutation()
    assert sig.uniform_multiplicity() is None
    assert signature(Word((3, 1, 2), 3)).is_permutation()
    assert signature(Word((1, 1, 2, 2), 2)).uniform_multiplicity() == 2


# -- frequencies ---------------------------------------------------------------


def test_frequency_values():
    w = parse_word("1212")
    assert frequency(w, parse_word("12")) == Fraction(2, 3)
    assert frequency(w, parse_word("21")) == Fraction(1, 3)
    assert frequency(w, parse_word("1212")) == 1
    assert frequency(w, parse_word("11")) == 0
    assert frequency(w, parse_word("121212")) == 0
    with pytest.raises(ValueError):
        frequency(w, Word((), 2))


@given(words.filter(lambda w: len(w) >= 1))
def test_frequency_table_matches_pointwise(w):
    cap = min(3, len(w))
    table = frequency_table(w, cap)
    for m in range(1, cap + 1):
        for pat in itertools.product(range(1, w.k + 1), repeat=m):
            u = Word(pat, w.k)
            assert table.frequency(u) == frequency(w, u)
    with pytest.raises(ValueError):
        table.frequency(Word((1,) * (cap + 1), w.k))


def test_frequency_table_validation():
    w = parse_word("121")
    with pytest.raises(ValueError):
        frequency_table(w, 0)
    with pytest.raises(ValueError):
        frequency_table(w, 4)


# -- regularity ----------------------------------------------------------------


def test_constant_word_is_regular():
    w = Word((1,) * 8, 2)
    assert is_regular(w, Fraction(1, 4), 2)
    assert is_regular(w, 1, 1)


def test_regularity_violation_is_first_in_scan_order():
    # 11112222: the length-2 prefix window sees letter 1 at frequency 1
    # against a global 1/2, so the gap 1/2 >= eps already at (0, 2).
    w = parse_word("11112222")
    report = is_regular(w, Fraction(1, 4), 1)
    assert not report
    witness = report.witness
    assert (witness.start, witness.end) == (0, 2)
    assert witness.pattern == Word((1,), 2)
    assert witness.gap == Fraction(1, 2)


def test_regularity_validation():
    w = parse_word("1212")
    with pytest.raises(ValueError):
        is_regular(w, 0, 1)
    with pytest.raises(ValueError):
        is_regular(w, Fraction(3, 2), 1)
    with pytest.raises(ValueError):
        is_regular(w, Fraction(1, 2), 5)


# -- structural operations ------------------------------------------------------


def test_distinguish_example():
    assert distinguish(Word((1, 2, 1), 2)) == Word((1, 3, 2), 3)


@given(words.filter(lambda w: len(w) >= 1))
def test_distinguish_is_permutation_preserving_copy_order(w):
    d = distinguish(w)
    assert sorted(d.letters) == list(range(1, len(w) + 1))
    # the j-th copy of a letter maps below its (j+1)-th copy
    seen: dict[int, int] = {}
    for orig, fresh in zip(w.letters, d.letters):
        if orig in seen:
            assert fresh > seen[orig]
        seen[orig] = fresh


def test_first_occurrence_permutation():
    w = parse_word("2123")
    assert first_occurrence_permutation(w, {1, 2, 3}) == Word((2, 1, 3), 3)
    assert first_occurrence_permutation(w, {2}) == Word((2,), 3)
    assert first_occurrence_permutation(Word((1, 1), 3), {1, 2}) == Word((), 3)
    with pytest.raises(ValueError):
        first_occurrence_permutation(w, {4})


def test_substitute():
    w = Word((1, 2), 2)
    family = [Word((1, 1), 3), Word((2, 3), 3)]
    assert substitute(w, family) == Word((1, 1, 2, 3), 3)
    with pytest.raises(ValueError):
        substitute(w, family[:1])
    with pytest.raises(ValueError):
        substitute(w, [Word((1,), 3), Word((1,), 2)])
