"""Longest common subsequences: pairs, reversals, and joint LCS of word sets.

Lengths use a bit-parallel row DP (big-int rows, one pass per letter of the
second word); witnesses are recovered on demand from a full suffix table and
follow the leftmost-greedy convention: among optimal alignments, the one whose
flattened index sequence (i1, j1, i2, j2, ...) is lexicographically smallest.
All results are deterministic; nothing here keeps mutable state.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import prod
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetError
from .words import Word

DEFAULT_BUDGET_CELLS = 10**8


@dataclass(frozen=True)
class LcsResult:
    """LCS length plus, when requested, one witness alignment.

    ``indices`` holds one index tuple per input word; ``word`` is the common
    subsequence itself.  Length-only queries leave both as None.
    """

    length: int
    word: Optional[Word] = None
    indices: Optional[tuple[tuple[int, ...], ...]] = None

    def to_json(self) -> dict:
        out: dict = {"length": self.length}
        if self.word is not None:
            out["word"] = self.word.to_text()
        if self.indices is not None:
            out["indices"] = [list(ix) for ix in self.indices]
        return out


def _require_common_alphabet(words: Sequence[Word]) -> None:
    if any(w.k != words[0].k for w in words):
        raise ValueError("all words must share one alphabet")


def lcs_len(a: Word, b: Word) -> int:
    """LCS length of two words over a common alphabet (bit-parallel row DP)."""
    _require_common_alphabet((a, b))
    n = len(a)
    if n == 0 or len(b) == 0:
        return 0
    masks: dict[int, int] = {}
    for i, c in enumerate(a.letters):
        masks[c] = masks.get(c, 0) | (1 << i)
    full = (1 << n) - 1
    row = 0
    for c in b.letters:
        u = row | masks.get(c, 0)
        row = u & ~((u - ((row << 1) | 1)) & full)
    return row.bit_count()


def _suffix_table_pair(a: Word, b: Word) -> np.ndarray:
    """S[i, j] = LCS(a[i:], b[j:]) as an int32 table."""
    n, m = len(a), len(b)
    av = np.asarray(a.letters, dtype=np.int64)
    bv = np.asarray(b.letters, dtype=np.int64)
    S = np.zeros((n + 1, m + 1), dtype=np.int32)
    for i in range(n - 1, -1, -1):
        cand = np.maximum(S[i + 1, :m], np.where(bv == av[i], 1 + S[i + 1, 1:], 0))
        S[i, :m] = np.flip(np.maximum.accumulate(np.flip(cand)))
    return S


def _check_budget(cells: int, budget_cells: int, what: str) -> None:
    if cells > budget_cells:
        raise BudgetError(
            f"{what} needs {cells} alignment cells, over the budget of "
            f"{budget_cells}; raise budget_cells or use length-only queries"
        )


def _suffix_table_multi(words: Sequence[Word]) -> np.ndarray:
    """Full suffix table S[v] = joint LCS of the suffixes starting at v."""
    r = len(words)
    dims = [len(w) + 1 for w in words]
    last = np.asarray(words[-1].letters, dtype=np.int64)
    m = dims[-1] - 1
    S = np.zeros(dims, dtype=np.int32)
    prefix_ranges = [range(d - 1, -1, -1) for d in dims[:-1]]
    for idx in product(*prefix_ranges):
        cands = []
        for d in range(r - 1):
            if idx[d] + 1 <= dims[d] - 1:
                nb = idx[:d] + (idx[d] + 1,) + idx[d + 1 :]
                cands.append(S[nb])
        base = np.zeros(m + 1, dtype=np.int32)
        for c in cands:
            np.maximum(base, c, out=base)
        if all(idx[d] < dims[d] - 1 for d in range(r - 1)):
            letters = [words[d][idx[d]] for d in range(r - 1)]
            if all(l == letters[0] for l in letters):
                diagp = tuple(i + 1 for i in idx)
                dv = np.where(last == letters[0], 1 + S[diagp][1:], 0)
                base[:m] = np.maximum(base[:m], dv)
        S[idx] = np.flip(np.maximum.accumulate(np.flip(base)))
    return S


def _walk_witness(words: Sequence[Word], S: np.ndarray) -> tuple[tuple[int, ...], ...]:
    """Leftmost-greedy alignment read off a suffix table.

    Each step picks the componentwise-smallest aligned position tuple that
    still has an optimal continuation; S monotonicity makes the partial-tuple
    bound (>= t-1 with untouched words at the current front) a sound prune.
    """
    r = len(words)
    dims = [len(w) for w in words]
    v = [0] * r
    t = int(S[tuple(v)])
    picks: list[tuple[int, ...]] = []

    def step(target: int) -> tuple[int, ...]:
        u: list[int] = []

        def rec(depth: int) -> bool:
            for pos in range(v[depth], dims[depth]):
                if depth > 0 and words[depth][pos] != words[0][u[0]]:
                    continue
                u.append(pos)
                head = tuple(x + 1 for x in u)
                tail = tuple(v[d] for d in range(depth + 1, r))
                if int(S[head + tail]) >= target:
                    if depth == r - 1 or rec(depth + 1):
                        return True
                u.pop()
            return False

        if not rec(0):  # cannot happen for a correct table
            raise AssertionError("witness walk lost the optimum")
        return tuple(u)

    while t > 0:
        hit = step(t - 1)
        picks.append(hit)
        v = [x + 1 for x in hit]
        t -= 1
    return tuple(tuple(p[d] for p in picks) for d in range(r))


def lcs_pair(a: Word, b: Word, *, witness: bool = True,
             budget_cells: int = DEFAULT_BUDGET_CELLS) -> LcsResult:
    """LCS of two words; with ``witness`` the leftmost-greedy alignment."""
    _require_common_alphabet((a, b))
    if not witness:
        return LcsResult(lcs_len(a, b))
    if len(a) == 0 or len(b) == 0:
        return LcsResult(0, Word((), a.k), ((), ()))
    _check_budget((len(a) + 1) * (len(b) + 1), budget_cells, "pair witness")
    S = _suffix_table_pair(a, b)
    indices = _walk_witness((a, b), S)
    common = Word(tuple(a[i] for i in indices[0]), a.k)
    return LcsResult(int(S[0, 0]), common, indices)


@dataclass(frozen=True)
class ReversibleResult:
    """max(LCS(a, b), LCS(a, reverse(b))) and which orientation won.

    Ties prefer the forward orientation.  Witness indices for the reverse
    orientation refer to the reversed copy of b.
    """

    length: int
    orientation: str  # "forward" | "reverse"
    detail: LcsResult

    def to_json(self) -> dict:
        return {"length": self.length, "orientation": self.orientation,
                "detail": self.detail.to_json()}


def lcs_reversible(a: Word, b: Word, *, witness: bool = False,
                   budget_cells: int = DEFAULT_BUDGET_CELLS) -> ReversibleResult:
    fwd = lcs_len(a, b)
    rev = lcs_len(a, b.reversed())
    if fwd >= rev:
        detail = lcs_pair(a, b, witness=witness, budget_cells=budget_cells) \
            if witness else LcsResult(fwd)
        return ReversibleResult(fwd, "forward", detail)
    detail = lcs_pair(a, b.reversed(), witness=witness, budget_cells=budget_cells) \
        if witness else LcsResult(rev)
    return ReversibleResult(rev, "reverse", detail)


def lcs_multi(words: Sequence[Word], *, witness: bool = True,
              budget_cells: int = DEFAULT_BUDGET_CELLS) -> LcsResult:
    """Joint LCS of two or more words (full multi-dimensional alignment).

    The alignment table has prod(len(w)+1) cells and must fit the cell budget.
    """
    words = list(words)
    if len(words) < 1:
        raise ValueError("need at least one word")
    _require_common_alphabet(words)
    if len(words) == 1:
        w = words[0]
        if not witness:
            return LcsResult(len(w))
        return LcsResult(len(w), w, (tuple(range(len(w))),))
    if any(len(w) == 0 for w in words):
        empty = (Word((), words[0].k), tuple(() for _ in words)) if witness else (None, None)
        return LcsResult(0, empty[0], empty[1])
    cells = prod(len(w) + 1 for w in words)
    _check_budget(cells, budget_cells, f"{len(words)}-way alignment")
    if len(words) == 2 and not witness:
        return LcsResult(lcs_len(words[0], words[1]))
    S = _suffix_table_pair(words[0], words[1]) if len(words) == 2 \
        else _suffix_table_multi(words)
    length = int(S[(0,) * len(words)])
    if not witness:
        return LcsResult(length)
    indices = _walk_witness(words, S)
    common = Word(tuple(words[0][i] for i in indices[0]), words[0].k)
    return LcsResult(length, common, indices)


@dataclass(frozen=True)
class SetLcsStats:
    """Pairwise LCS table of a word set plus the best T-subset joint LCS."""

    t: int
    pairwise: tuple[tuple[int, ...], ...]
    value: int
    best_subset: tuple[int, ...]

    def to_json(self) -> dict:
        return {"t": self.t, "pairwise": [list(r) for r in self.pairwise],
                "value": self.value, "best_subset": list(self.best_subset)}


def set_lcs_stats(words: Sequence[Word], t: int, *,
                  budget_cells: int = DEFAULT_BUDGET_CELLS) -> SetLcsStats:
    """Pairwise LCS matrix and max joint LCS over subsets of size t."""
    words = list(words)
    _require_common_alphabet(words)
    if not 1 <= t <= len(words):
        raise ValueError(f"subset size {t} out of range for {len(words)} words")
    n = len(words)
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        table[i][i] = len(words[i])
    for i, j in combinations(range(n), 2):
        table[i][j] = table[j][i] = lcs_len(words[i], words[j])
    if t == 1:
        best = max(range(n), key=lambda i: len(words[i]))
        value, subset = len(words[best]), (best,)
    elif t == 2:
        value, subset = -1, (0, 1)
        for i, j in combinations(range(n), 2):
            if table[i][j] > value:
                value, subset = table[i][j], (i, j)
    else:
        spent = 0
        value, subset = -1, tuple(range(t))
        for combo in combinations(range(n), t):
            cells = prod(len(words[i]) + 1 for i in combo)
            spent += cells
            _check_budget(spent, budget_cells, f"joint LCS over {t}-subsets")
            got = lcs_multi([words[i] for i in combo], witness=False,
                            budget_cells=budget_cells).length
            if got > value:
                value, subset = got, combo
    frozen = tuple(tuple(r) for r in table)
    return SetLcsStats(t, frozen, value, subset)
