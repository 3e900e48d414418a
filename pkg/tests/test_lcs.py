"""LCS engine: pair, reversible, multi-way, set statistics, budgets."""

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_lcs, brute_lcs_multi
from twinlcs import (
    BudgetError,
    Word,
    lcs_multi,
    lcs_pair,
    lcs_reversible,
    parse_word,
    set_lcs_stats,
    substream,
)

pairs = st.integers(2, 4).flatmap(
    lambda k: st.tuples(
        st.lists(st.integers(1, k), max_size=14).map(lambda ls: Word(tuple(ls), k)),
        st.lists(st.integers(1, k), max_size=14).map(lambda ls: Word(tuple(ls), k))))


def assert_witness_consistent(a, b, res):
    ia, ib = res.indices
    assert len(ia) == len(ib) == res.length == len(res.word)
    assert list(ia) == sorted(set(ia)) and list(ib) == sorted(set(ib))
    assert tuple(a[i] for i in ia) == res.word.letters
    assert tuple(b[i] for i in ib) == res.word.letters


def test_pair_example():
    res = lcs_pair(parse_word("1212"), parse_word("2121"))
    assert res.length == 3
    assert_witness_consistent(parse_word("1212"), parse_word("2121"), res)


@given(pairs)
def test_pair_matches_brute_force(ab):
    a, b = ab
    res = lcs_pair(a, b)
    assert res.length == brute_lcs(a.letters, b.letters)
    assert_witness_consistent(a, b, res)


def test_pair_edge_cases():
    assert lcs_pair(Word((), 2), parse_word("12")).length == 0
    assert lcs_pair(parse_word("111"), parse_word("11")).length == 2
    with pytest.raises(ValueError):
        lcs_pair(Word((1,), 2), Word((1,), 3))


def test_pair_budget():
    a = Word((1,) * 600, 2)
    with pytest.raises(BudgetError):
        lcs_pair(a, a, budget_cells=1000)


@given(pairs)
def test_reversible_is_max_of_orientations(ab):
    a, b = ab
    res = lcs_reversible(a, b)
    fwd = brute_lcs(a.letters, b.letters)
    rev = brute_lcs(a.letters, b.letters[::-1])
    assert res.length == max(fwd, rev)
    if fwd >= rev:
        assert res.orientation == "forward"  # ties prefer forward
    else:
        assert res.orientation == "reverse"


def test_reversible_witness():
    a, b = parse_word("123"), parse_word("321")
    res = lcs_reversible(a, b, witness=True)
    assert res.orientation == "reverse"
    assert res.length == 3
    assert_witness_consistent(a, b.reversed(), res.detail)


def test_permutation_reversible_floor():
    # any two permutations of [k] share a subsequence of length sqrt(k)
    # in one of the two orientations
    rng = substream(3, 0)
    for k in (2, 3, 4, 5, 8, 16, 36, 64):
        for _ in range(20):
            pa = tuple(int(v) + 1 for v in rng.permutation(k))
            pb = tuple(int(v) + 1 for v in rng.permutation(k))
            best = max(brute_lcs(pa, pb), brute_lcs(pa, pb[::-1]))
            assert best * best >= k
    # exhaustively for small k
    for k in (2, 3, 4):
        for pa in itertools.permutations(range(1, k + 1)):
            for pb in itertools.permutations(range(1, k + 1)):
                best = max(brute_lcs(pa, pb), brute_lcs(pa, pb[::-1]))
                assert best >= math.sqrt(k)


def test_multipermutation_reversible_floor():
    # s copies of each of k letters: LCSr >= sqrt(n) with n = s*k
    rng = substream(4, 0)
    for k, s in ((3, 2), (4, 3), (6, 2), (8, 4)):
        base = [l for l in range(1, k + 1) for _ in range(s)]
        n = k * s
        for _ in range(25):
            pa = Word(tuple(base[i] for i in rng.permutation(n)), k)
            pb = Word(tuple(base[i] for i in rng.permutation(n)), k)
            assert lcs_reversible(pa, pb).length >= math.sqrt(n)


multis = st.integers(2, 3).flatmap(
    lambda k: st.lists(
        st.lists(st.integers(1, k), max_size=7).map(lambda ls: Word(tuple(ls), k)),
        min_size=2, max_size=4))


@given(multis)
def test_multi_matches_brute_force(ws):
    res = lcs_multi(ws, witness=False)
    assert res.length == brute_lcs_multi([w.letters for w in ws])


def test_multi_witness():
    ws = [parse_word("1213"), parse_word("2123"), parse_word("1231")]
    res = lcs_multi(ws)
    assert res.length == 3
    assert res.word == parse_word("123")
    for w, idx in zip(ws, res.indices):
        assert tuple(w[i] for i in idx) == res.word.letters


def test_multi_validation():
    assert lcs_multi([parse_word("12")]).length == 2
    with pytest.raises(ValueError):
        lcs_multi([])
    with pytest.raises(ValueError):
        lcs_multi([Word((1,), 2), Word((1,), 3)])


def test_set_stats():
    ws = [parse_word("123"), parse_word("321"), parse_word("213")]
    stats = set_lcs_stats(ws, 2)
    assert stats.t == 2
    # best pair is (123, 213) with LCS 2
    assert stats.value == 2
    assert stats.best_subset == (0, 2)
    assert stats.pairwise[0][1] == 1
    assert stats.pairwise[0][0] == 3  # diagonal holds the word length
    # t = 3 takes the single triple
    assert set_lcs_stats(ws, 3).value == brute_lcs_multi(
        [w.letters for w in ws])
    with pytest.raises(ValueError):
        set_lcs_stats(ws, 4)
    with pytest.raises(ValueError):
        set_lcs_stats(ws, 0)
