"""Twins: pairs of disjoint, equal subsequences of a single word.

A twin certificate marks each position of a word with a role: 0 for
unused, 1 for the first subsequence, 2 for the second.  Reading the
role-1 positions left to right must spell the same word as the role-2
positions.  The length of the twins is the number of pairs.

``lt_exact`` computes the maximum twin length by a memoized search over
(position, owed letters) states and returns the lexicographically
smallest monotone role word achieving it.  ``lt_oracle`` recomputes the
value by brute enumeration of role words and exists purely as an
independent cross-check; it shares no search logic with the solver.

A role word is *monotone* when every prefix contains at least as many
1s as 2s (equivalently: the i-th marked position of the first
subsequence precedes the i-th marked position of the second).  Any
twins can be rearranged into monotone twins of the same length by
pairing the i-th smallest indices of both sides, so restricting
attention to monotone role words never changes the value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import BudgetError, InvalidCertificateError
from .lcs import lcs_pair
from .words import Word

Roles = tuple[int, ...]

DEFAULT_EXACT_LENGTH = 40
DEFAULT_ORACLE_LENGTH = 14
DEFAULT_NODE_BUDGET = 5_000_000


def parse_roles(text: str) -> Roles:
    """Parse a role word given as a string of digits 0, 1, 2."""
    roles = tuple(int(ch) for ch in text.strip())
    for r in roles:
        if r not in (0, 1, 2):
            raise ValueError(f"role digits must be 0, 1 or 2, got {r}")
    return roles


def roles_to_text(roles: Roles) -> str:
    return "".join(str(r) for r in roles)


def is_monotone(roles: Roles) -> bool:
    """True when the role word is balanced and no prefix has more 2s than 1s."""
    ones = twos = 0
    for r in roles:
        if r == 1:
            ones += 1
        elif r == 2:
            twos += 1
            if twos > ones:
                return False
    return ones == twos


@dataclass(frozen=True)
class TwinCertificate:
    """A word together with a role word whose marked subsequences agree."""

    word: Word
    roles: Roles
    first: tuple[int, ...]
    second: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.first)

    @property
    def is_monotone(self) -> bool:
        return is_monotone(self.roles)

    def twin_word(self) -> Word:
        """The common word spelled by either marked subsequence."""
        return Word(tuple(self.word[i] for i in self.first), self.word.k)

    def to_json(self) -> dict:
        return {
            "word": self.word.to_json(),
            "roles": roles_to_text(self.roles),
            "first": list(self.first),
            "second": list(self.second),
            "length": self.length,
            "monotone": self.is_monotone,
        }


def extract(word: Word, roles: Roles) -> TwinCertificate:
    """Validate a role word against a word and package the certificate.

    Raises InvalidCertificateError when the role word has the wrong
    length, a digit outside {0, 1, 2}, unbalanced counts, or when the
    two marked subsequences spell different words.
    """
    roles = tuple(int(r) for r in roles)
    if len(roles) != len(word):
        raise InvalidCertificateError(
            f"role word length {len(roles)} != word length {len(word)}")
    first = []
    second = []
    for i, r in enumerate(roles):
        if r == 1:
            first.append(i)
        elif r == 2:
            second.append(i)
        elif r != 0:
            raise InvalidCertificateError(f"role at position {i} is {r}")
    if len(first) != len(second):
        raise InvalidCertificateError(
            f"unbalanced roles: {len(first)} ones vs {len(second)} twos")
    for a, b in zip(first, second):
        if word[a] != word[b]:
            raise InvalidCertificateError(
                f"subsequences differ: position {a} holds {word[a]}, "
                f"position {b} holds {word[b]}")
    return TwinCertificate(word, roles, tuple(first), tuple(second))


def is_twin_roles(word: Word, roles: Roles) -> bool:
    try:
        extract(word, roles)
    except InvalidCertificateError:
        return False
    return True


# -- role statistics --------------------------------------------------------


@dataclass(frozen=True)
class RoleStats:
    """Counts read off a role word.

    pairs: number of 1s (= number of 2s).
    switches: number of 1-positions whose nearest preceding nonzero
        role is a 2 (a hand-back from the second subsequence to the
        first, zeros aside).
    leading_zeros: length of the all-zero prefix.
    """

    length: int
    pairs: int
    switches: int
    leading_zeros: int

    def __post_init__(self):
        if not 0 <= self.switches <= self.pairs:
            raise ValueError("switches must lie between 0 and pairs")
        if not 0 <= self.leading_zeros <= self.length - 2 * self.pairs:
            raise ValueError("leading zeros exceed the unmarked budget")

    def to_json(self) -> dict:
        return {"length": self.length, "pairs": self.pairs,
                "switches": self.switches, "leading_zeros": self.leading_zeros}


def role_stats(roles: Roles) -> RoleStats:
    """Pairs, switch count and leading-zero count of a role word."""
    ones = twos = 0
    switches = 0
    leading = 0
    last_nonzero = 0
    in_prefix = True
    for r in roles:
        if r == 0:
            if in_prefix:
                leading += 1
            continue
        in_prefix = False
        if r == 1:
            ones += 1
            if last_nonzero == 2:
                switches += 1
        else:
            twos += 1
        last_nonzero = r
    if ones != twos:
        raise InvalidCertificateError(
            f"unbalanced roles: {ones} ones vs {twos} twos")
    return RoleStats(len(roles), ones, switches, leading)


# -- monotonization and regularity ------------------------------------------


def monotonize(cert: TwinCertificate) -> TwinCertificate:
    """Rearrange a certificate into a monotone one of the same length.

    Pairs the i-th marked position of each side and reassigns the
    smaller index to the first subsequence.  Both new index sequences
    are increasing and letters are preserved, so the result is a valid
    monotone certificate of equal length.
    """
    roles = [0] * len(cert.word)
    for a, b in zip(cert.first, cert.second):
        lo, hi = (a, b) if a < b else (b, a)
        roles[lo] = 1
        roles[hi] = 2
    out = extract(cert.word, tuple(roles))
    if not out.is_monotone:
        raise AssertionError("monotonization produced a non-monotone word")
    return out


@dataclass(frozen=True)
class RegularityViolation:
    """A forbidden same-letter pattern inside a certificate.

    kind "switch": position ``left`` has role 2, position ``right`` has
    role 1, only zeros lie strictly between, and both hold one letter.
    kind "idle": position ``left`` is the nearest nonzero role before
    the unmarked position ``right`` and both hold one letter.
    """

    kind: str
    left: int
    right: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "left": self.left, "right": self.right}


def find_regularity_violation(word: Word,
                              roles: Roles) -> Optional[RegularityViolation]:
    """First forbidden pattern in reading order, or None."""
    last_nonzero = -1
    for j, r in enumerate(roles):
        if r == 0:
            if last_nonzero >= 0 and word[last_nonzero] == word[j]:
                return RegularityViolation("idle", last_nonzero, j)
        else:
            if (r == 1 and last_nonzero >= 0 and roles[last_nonzero] == 2
                    and word[last_nonzero] == word[j]):
                return RegularityViolation("switch", last_nonzero, j)
            last_nonzero = j
    return None


def is_regular_pair(word: Word, roles: Roles) -> bool:
    """True when neither forbidden same-letter pattern occurs."""
    return find_regularity_violation(word, roles) is None


# -- exact solver ------------------------------------------------------------

_INFEASIBLE = -1


class _TwinSolver:
    """Memoized maximum over (position, owed letters) states.

    The state after scanning a prefix is the queue of letters marked 1
    but not yet matched by a 2 (first in, first out).  The value of a
    state is the largest number of additional 1s placeable so that the
    queue empties by the end of the word.
    """

    def __init__(self, word: Word, budget_nodes: int = DEFAULT_NODE_BUDGET):
        self.letters = word.letters
        self.n = len(word.letters)
        self.k = word.k
        self.budget_nodes = budget_nodes
        self.nodes = 0
        self.memo: dict[tuple[int, Roles], int] = {}
        # next_at[p][c]: first index >= p holding c, else n
        nxt = [self.n] * (self.k + 1)
        self.next_at = [tuple(nxt)]
        for p in range(self.n - 1, -1, -1):
            nxt = list(nxt)
            nxt[self.letters[p]] = p
            self.next_at.append(tuple(nxt))
        self.next_at.reverse()
        # counts[p][c]: occurrences of c in letters[p:]
        row = [0] * (self.k + 1)
        self.counts = [tuple(row)]
        for p in range(self.n - 1, -1, -1):
            row = list(row)
            row[self.letters[p]] += 1
            self.counts.append(tuple(row))
        self.counts.reverse()

    def _clears(self, pos: int, debt: Roles) -> bool:
        """Can the owed letters be matched, in order, within letters[pos:]?"""
        p = pos
        for c in debt:
            p = self.next_at[p][c]
            if p >= self.n:
                return False
            p += 1
        return True

    def value(self, pos: int, debt: Roles) -> int:
        key = (pos, debt)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        self.nodes += 1
        if self.nodes > self.budget_nodes:
            raise BudgetError(
                f"twin search exceeded {self.budget_nodes} states")
        if not self._clears(pos, debt):
            self.memo[key] = _INFEASIBLE
            return _INFEASIBLE
        # upper bound on further pairs: global slack and per-letter slack
        ub = (self.n - pos - len(debt)) // 2
        if ub > 0:
            counts = self.counts[pos]
            per_letter = 0
            for c in range(1, self.k + 1):
                avail = counts[c] - debt.count(c)
                if avail >= 2:
                    per_letter += avail // 2
            ub = min(ub, per_letter)
        if ub <= 0:
            self.memo[key] = 0
            return 0
        c = self.letters[pos]
        best = self.value(pos + 1, debt)
        if debt and debt[0] == c:
            cand = self.value(pos + 1, debt[1:])
            if cand > best:
                best = cand
        cand = self.value(pos + 1, debt + (c,))
        if cand != _INFEASIBLE and cand + 1 > best:
            best = cand + 1
        self.memo[key] = best
        return best


def _minimal_roles(solver: _TwinSolver, word: Word, target: int) -> Roles:
    """Lexicographically smallest monotone role word with ``target`` pairs.

    Greedy per position over roles 0 < 1 < 2, keeping a role exactly
    when some completion still reaches ``target`` pairs.  Reaching at
    least the remaining count suffices: dropping the final pair of any
    certificate leaves a valid certificate, so the count can always be
    trimmed down to the target.
    """
    roles = []
    debt: Roles = ()
    placed = 0
    for pos in range(len(word)):
        c = word[pos]
        if solver.value(pos + 1, debt) >= target - placed:
            roles.append(0)
            continue
        if (placed < target
                and solver.value(pos + 1, debt + (c,)) >= target - placed - 1):
            roles.append(1)
            debt = debt + (c,)
            placed += 1
            continue
        if (debt and debt[0] == c
                and solver.value(pos + 1, debt[1:]) >= target - placed):
            roles.append(2)
            debt = debt[1:]
            continue
        raise AssertionError("role reconstruction lost feasibility")
    return tuple(roles)


def lt_exact(word: Word, *, max_length: int = DEFAULT_EXACT_LENGTH,
             budget_nodes: int = DEFAULT_NODE_BUDGET) -> TwinCertificate:
    """Maximum-length twins with the lexicographically smallest monotone
    role word among the optima."""
    if len(word) > max_length:
        raise ValueError(
            f"exact search supports length <= {max_length}, got {len(word)}")
    solver = _TwinSolver(word, budget_nodes)
    best = solver.value(0, ())
    return extract(word, _minimal_roles(solver, word, best))


def minimal_certificate(word: Word, length: int, *,
                        budget_nodes: int = DEFAULT_NODE_BUDGET
                        ) -> TwinCertificate:
    """Lexicographically smallest monotone certificate with exactly
    ``length`` pairs; raises ValueError when none exists."""
    if length < 0:
        raise ValueError("twin length must be nonnegative")
    solver = _TwinSolver(word, budget_nodes)
    if solver.value(0, ()) < length:
        raise ValueError(f"no twins of length {length} in {word.to_text()}")
    return extract(word, _minimal_roles(solver, word, length))


def regularize(cert: TwinCertificate, *,
               budget_nodes: int = DEFAULT_NODE_BUDGET) -> TwinCertificate:
    """Canonical certificate of the same length: the lexicographically
    smallest monotone role word with as many pairs.

    The minimum contains neither forbidden pattern: resolving a
    "switch" by exchanging the two roles, or an "idle" by sliding a
    mark onto the unmarked twin letter, would produce a smaller valid
    monotone role word.  Requires a monotone input.
    """
    if not cert.is_monotone:
        raise InvalidCertificateError("regularize requires a monotone input")
    return minimal_certificate(cert.word, cert.length,
                               budget_nodes=budget_nodes)


# -- independent oracle ------------------------------------------------------


@lru_cache(maxsize=None)
def _ballot_tables(n: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Index tables of every monotone role word of length n with m pairs.

    Returns arrays (ones, twos) of shape (count, m): row r lists the
    role-1 and role-2 positions of the r-th role word.
    """
    ones_rows: list[tuple[int, ...]] = []
    twos_rows: list[tuple[int, ...]] = []
    ones: list[int] = []
    twos: list[int] = []

    def rec(pos: int) -> None:
        if len(ones) == m and len(twos) == m:
            ones_rows.append(tuple(ones))
            twos_rows.append(tuple(twos))
            return
        if n - pos < 2 * m - len(ones) - len(twos):
            return
        rec(pos + 1)
        if len(ones) < m:
            ones.append(pos)
            rec(pos + 1)
            ones.pop()
        if len(twos) < len(ones):
            twos.append(pos)
            rec(pos + 1)
            twos.pop()

    rec(0)
    shape = (len(ones_rows), m)
    return (np.array(ones_rows, dtype=np.int8).reshape(shape),
            np.array(twos_rows, dtype=np.int8).reshape(shape))


def lt_oracle(word: Word, *, max_length: int = DEFAULT_ORACLE_LENGTH) -> int:
    """Maximum twin length by brute enumeration of monotone role words.

    For each candidate pair count, in decreasing order, every monotone
    role word is materialized and checked against the word with one
    vectorized letter comparison.  Independent of the solver by design.
    """
    n = len(word)
    if n > max_length:
        raise ValueError(
            f"oracle enumeration supports length <= {max_length}, got {n}")
    if n < 2:
        return 0
    arr = np.array(word.letters, dtype=np.int16)
    per_letter = 0
    for c in range(1, word.k + 1):
        per_letter += int((arr == c).sum()) // 2
    for m in range(min(n // 2, per_letter), 0, -1):
        ones, twos = _ballot_tables(n, m)
        if ones.shape[0] and bool((arr[ones] == arr[twos]).all(axis=1).any()):
            return m
    return 0


def lt_tuplets(word: Word, t: int, *,
               budget_nodes: int = DEFAULT_NODE_BUDGET) -> int:
    """Largest m such that the word contains t pairwise disjoint equal
    subsequences of length m.

    t = 1 asks for one subsequence, hence the word length.  For t >= 2
    the search scans positions holding a queue per adjacent pair of
    copies: a letter marked for copy j waits there until matched in
    copy j+1.  As with twins, the copies of an optimal family can be
    rearranged so the i-th letters appear in copy order, so this scan
    is exhaustive.
    """
    if t < 1:
        raise ValueError(f"tuplet order must be >= 1, got {t}")
    if t == 1:
        return len(word)
    letters = word.letters
    n = len(letters)
    empty: tuple[Roles, ...] = ((),) * (t - 1)
    memo: dict[tuple[int, tuple[Roles, ...]], int] = {}
    nodes = 0

    def value(pos: int, debts: tuple[Roles, ...]) -> int:
        nonlocal nodes
        key = (pos, debts)
        cached = memo.get(key)
        if cached is not None:
            return cached
        nodes += 1
        if nodes > budget_nodes:
            raise BudgetError(f"tuplet search exceeded {budget_nodes} states")
        # clearing the queue for copy i+2 costs t-1-i positions per letter
        need = sum((t - 1 - i) * len(d) for i, d in enumerate(debts))
        if n - pos < need:
            memo[key] = _INFEASIBLE
            return _INFEASIBLE
        if pos == n:
            memo[key] = 0 if need == 0 else _INFEASIBLE
            return memo[key]
        c = letters[pos]
        best = value(pos + 1, debts)
        cand = value(pos + 1, (debts[0] + (c,),) + debts[1:])
        if cand != _INFEASIBLE and cand + 1 > best:
            best = cand + 1
        for i, queue in enumerate(debts):
            if queue and queue[0] == c:
                nxt = list(debts)
                nxt[i] = queue[1:]
                if i + 1 < t - 1:
                    nxt[i + 1] = nxt[i + 1] + (c,)
                cand = value(pos + 1, tuple(nxt))
                if cand > best:
                    best = cand
        memo[key] = best
        return best

    return max(value(0, empty), 0)


# -- cheap bounds and quick constructions ------------------------------------


def run_count(word: Word) -> int:
    """Number of maximal blocks of one repeated letter."""
    runs = 0
    prev = None
    for c in word:
        if c != prev:
            runs += 1
            prev = c
    return runs


def split_upper_bound(word: Word) -> int:
    """Upper bound on the twin length from single splits.

    For any split w = xy, pairs inside x are at most the trivial bound
    for x, pairs inside y likewise, and pairs crossing the split read
    off a common subsequence of x and y.  Minimizing over splits keeps
    the bound sound.
    """

    def cheap(lo: int, hi: int) -> int:
        counts: dict[int, int] = {}
        for i in range(lo, hi):
            counts[word[i]] = counts.get(word[i], 0) + 1
        return min((hi - lo) // 2, sum(v // 2 for v in counts.values()))

    n = len(word)
    best = cheap(0, n)
    for s in range(1, n):
        head = Word(word.letters[:s], word.k)
        tail = Word(word.letters[s:], word.k)
        bound = cheap(0, s) + lcs_pair(head, tail, witness=False).length \
            + cheap(s, n)
        if bound < best:
            best = bound
    return best


def twins_via_runs(word: Word) -> TwinCertificate:
    """Twins from repeated letters: each run of length L yields
    floor(L/2) pairs, so the total is at least (n - #runs) / 2."""
    n = len(word)
    roles = [0] * n
    i = 0
    while i < n:
        j = i
        while j < n and word[j] == word[i]:
            j += 1
        half = (j - i) // 2
        for off in range(half):
            roles[i + off] = 1
        for off in range(half, 2 * half):
            roles[i + off] = 2
        i = j
    return extract(word, tuple(roles))


@dataclass(frozen=True)
class BlockTwinsResult:
    """Twins assembled from disjoint blocks of 3k consecutive positions.

    Each full block is split into three length-k tracks by position
    residue mod 3; the best pairwise LCS among the tracks becomes that
    block's contribution.  ``per_block_floor`` is (k/3)^(1/3), the
    guarantee each block is expected to meet.
    """

    certificate: TwinCertificate
    block_values: tuple[int, ...]
    per_block_floor: float

    @property
    def floor_met(self) -> bool:
        return all(v >= self.per_block_floor for v in self.block_values)

    def to_json(self) -> dict:
        return {"certificate": self.certificate.to_json(),
                "block_values": list(self.block_values),
                "per_block_floor": self.per_block_floor,
                "floor_met": self.floor_met}


def twins_via_blocks(word: Word) -> BlockTwinsResult:
    """Blockwise twins: round-robin split each block of 3k positions
    into three tracks, take the best pairwise LCS per block, and chain
    the per-block twins.  A trailing partial block is dropped."""
    k = word.k
    n = len(word)
    size = 3 * k
    roles = [0] * n
    values = []
    for base in range(0, n - size + 1, size):
        tracks = [[base + off for off in range(size) if off % 3 == track]
                  for track in range(3)]
        track_words = [Word(tuple(word[p] for p in tr), k) for tr in tracks]
        best = None
        for a, b in ((0, 1), (0, 2), (1, 2)):
            res = lcs_pair(track_words[a], track_words[b])
            if best is None or res.length > best[0]:
                best = (res.length, a, b, res.indices)
        length, a, b, (in_a, in_b) = best
        for idx in in_a:
            roles[tracks[a][idx]] = 1
        for idx in in_b:
            roles[tracks[b][idx]] = 2
        values.append(length)
    cert = monotonize(extract(word, tuple(roles)))
    return BlockTwinsResult(cert, tuple(values), (k / 3) ** (1.0 / 3.0))


def random_monotone_certificate(word: Word, rng: np.random.Generator, *,
                                require_pairs: bool = True,
                                max_tries: int = 64) -> TwinCertificate:
    """Sample a monotone certificate by a feasibility-guarded role walk.

    At each position one of the roles 0, 1, 2 is drawn uniformly among
    those after which the owed letters still fit into the remainder of
    the word, so the walk never dead-ends.  With ``require_pairs`` the
    walk retries until at least one pair lands.
    """
    n = len(word)
    solver = _TwinSolver(word)  # reused for its next-occurrence table

    def feasible(debt: Roles, pos: int) -> bool:
        return solver._clears(pos, debt)

    for _ in range(max_tries):
        debt: Roles = ()
        roles = []
        pairs = 0
        for pos in range(n):
            c = word[pos]
            options = []
            if feasible(debt, pos + 1):
                options.append((0, debt))
            if feasible(debt + (c,), pos + 1):
                options.append((1, debt + (c,)))
            if debt and debt[0] == c and feasible(debt[1:], pos + 1):
                options.append((2, debt[1:]))
            role, debt = options[int(rng.integers(len(options)))]
            if role == 1:
                pairs += 1
            roles.append(role)
        if pairs or not require_pairs:
            return extract(word, tuple(roles))
    raise ValueError("no certificate with pairs found; word may lack"
                     " repeated letters")
