"""Tail bounds for twin lengths in random words, and numeric constants.

The calculus counts role words by their statistics (pairs, switches,
leading zeros), multiplies by the exact probability that a random word
realizes a given role word as a regular pair, and sums.  The exponential
rate of that sum is ``theta``; where theta turns negative, twins of the
corresponding density are asymptotically impossible, which yields the
per-alphabet density thresholds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .twins import RoleStats

E = math.e


@dataclass(frozen=True)
class BoundQuery:
    """Validated parameter bundle for tail-bound evaluations."""

    k: int
    n: int = 0
    m: int = 0
    alpha: Optional[float] = None
    p: int = 0
    z: int = 0

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.k}")
        if self.alpha is not None and not 1 / self.k <= self.alpha <= 0.5:
            raise ValueError(f"alpha must lie in [1/k, 1/2], got {self.alpha}")
        if not 0 <= 2 * self.m <= self.n:
            raise ValueError(f"pair count {self.m} out of range for n={self.n}")
        if not 0 <= self.p <= self.m:
            raise ValueError(f"switch count {self.p} out of range")
        if not 0 <= self.z <= self.n - 2 * self.m:
            raise ValueError(f"leading zero count {self.z} out of range")


# -- exponential rate --------------------------------------------------------


@dataclass(frozen=True)
class ThetaBreakdown:
    """Value and additive terms of the tail exponent at density alpha.

    shape_term: (1-2a) ln(1/(1-2a)), placing the unmarked positions.
    match_term: -a ln(a^2 k), pair placements times the match probability.
    switch_term: -2a ln(2/(1 + sqrt(1-1/k))), the switch-count generating
        factor at its dominant point.
    idle_term: (1-2a) ln(1-1/k), the idle-position letter constraints.
    """

    alpha: float
    k: int
    shape_term: float
    match_term: float
    switch_term: float
    idle_term: float

    @property
    def value(self) -> float:
        return (self.shape_term + self.match_term + self.switch_term
                + self.idle_term)

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "k": self.k, "value": self.value,
                "terms": {"shape": self.shape_term, "match": self.match_term,
                          "switch": self.switch_term, "idle": self.idle_term}}


def theta(alpha: float, k: int) -> ThetaBreakdown:
    """Tail exponent for twins of density alpha in words over [k].

    Defined for 1/k <= alpha <= 1/2 and k >= 2; at alpha = 1/2 the shape
    and idle terms vanish in the limit.
    """
    if k < 2:
        raise ValueError(f"alphabet size must be >= 2, got {k}")
    if not 1 / k <= alpha <= 0.5:
        raise ValueError(f"alpha must lie in [1/k, 1/2], got {alpha}")
    gap = 1.0 - 2.0 * alpha
    shape = gap * math.log(1.0 / gap) if gap > 0 else 0.0
    match = -alpha * math.log(alpha * alpha * k)
    switch = -2.0 * alpha * math.log(2.0 / (1.0 + math.sqrt(1.0 - 1.0 / k)))
    idle = gap * math.log(1.0 - 1.0 / k) if gap > 0 else 0.0
    return ThetaBreakdown(alpha, k, shape, match, switch, idle)


theta_expression = theta


@dataclass(frozen=True)
class ThresholdResult:
    """Smallest density at which the exponent has (just) turned negative."""

    k: int
    alpha: float
    theta: float
    bracket: tuple[float, float]

    def to_json(self) -> dict:
        return {"k": self.k, "alpha": self.alpha, "theta": self.theta,
                "bracket": list(self.bracket)}


def alpha_threshold(k: int, *, step: float = 1e-3,
                    tol: float = 1e-9) -> Optional[ThresholdResult]:
    """Scan down from alpha = 1/2 for the rightmost sign change of theta
    on [1/k, 1/2] and bisect it.

    Returns the smallest alpha, to within ``tol``, such that theta stays
    negative on [alpha, 1/2]; None when theta(1/2) is already
    nonnegative and the method certifies nothing.  The scan step guards
    against non-monotone sign structure, which is not ruled out.
    """
    if theta(0.5, k).value >= 0:
        return None
    floor = 1.0 / k
    hi = 0.5
    lo = hi - step
    while lo > floor + step and theta(lo, k).value < 0:
        hi = lo
        lo -= step
    if theta(lo, k).value < 0:
        return None
    # theta(lo) >= 0 > theta(hi); bisect the crossing
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if theta(mid, k).value < 0:
            hi = mid
        else:
            lo = mid
    return ThresholdResult(k, hi, theta(hi, k).value, (lo, hi))


@dataclass(frozen=True)
class AsymptoticThreshold:
    """Large-alphabet approximations of the density threshold."""

    k: int
    leading: float  # e / sqrt(k)
    coarse: float   # e / sqrt(k) - e^2 / k
    refined: float  # e / sqrt(k) - (e^2 + 1/2) / k

    def to_json(self) -> dict:
        return {"k": self.k, "leading": self.leading, "coarse": self.coarse,
                "refined": self.refined}


def asymptotic_threshold(k: int) -> AsymptoticThreshold:
    if k < 2:
        raise ValueError(f"alphabet size must be >= 2, got {k}")
    lead = E / math.sqrt(k)
    return AsymptoticThreshold(k, lead, lead - E * E / k,
                               lead - (E * E + 0.5) / k)


asymptotic_upper = asymptotic_threshold


# -- role-word counting and probability --------------------------------------


def role_count(n: int, pairs: int, switches: int, leading_zeros: int) -> int:
    """Number of role words of length n with the given pair count, the
    given switch count, and an all-zero prefix of length at least
    ``leading_zeros``.

    The positions avoid the first ``leading_zeros`` slots in
    C(n - z, 2m) ways and the marked pattern has exactly p switches in
    C(m, p)^2 ways.  Exact integer arithmetic; out-of-range statistics
    describe an empty class and count 0.
    """
    if (n < 0 or pairs < 0 or switches < 0 or leading_zeros < 0
            or leading_zeros > n):
        return 0
    return (math.comb(n - leading_zeros, 2 * pairs)
            * math.comb(pairs, switches) ** 2)


def role_prob(k: int, n: int, pairs: int, switches: int,
              leading_zeros: int) -> Fraction:
    """Probability that a uniform word of length n over [k] realizes a
    role word with these statistics as a regular pair.

    Each of the m pairs matches with probability 1/k; each switch and
    each idle position after the leading zeros must avoid one earlier
    letter, each an independent factor (1 - 1/k).
    """
    if k < 1:
        raise ValueError(f"alphabet size must be >= 1, got {k}")
    if not (0 <= 2 * pairs <= n and 0 <= switches <= pairs
            and 0 <= leading_zeros <= n - 2 * pairs):
        raise ValueError("role statistics out of range")
    free = switches + n - 2 * pairs - leading_zeros
    return Fraction(1, k) ** pairs * Fraction(k - 1, k) ** free


def role_prob_stats(k: int, stats: RoleStats) -> Fraction:
    return role_prob(k, stats.length, stats.pairs, stats.switches,
                     stats.leading_zeros)


def union_bound(k: int, n: int, pairs: int) -> Fraction:
    """Exact upper bound on Pr[a uniform word of length n over [k] has
    twins of length >= pairs], summing count times probability over all
    switch and leading-zero statistics.

    Sound because a word with twins of length m has a lexicographically
    minimal monotone certificate with exactly m pairs, that certificate
    is regular, and the count-weighted sum dominates the union over all
    regular role words.
    """
    if pairs < 0 or n < 0:
        raise ValueError("length and pair count must be nonnegative")
    if 2 * pairs > n:
        return Fraction(0)
    total = Fraction(0)
    for p in range(pairs + 1):
        for z in range(n - 2 * pairs + 1):
            total += role_count(n, pairs, p, z) * role_prob(k, n, pairs, p, z)
    return total


# -- numeric constants -------------------------------------------------------


def _golden_min(f: Callable[[float], float], lo: float, hi: float,
                tol: float) -> float:
    """Golden-section minimum of a unimodal function on [lo, hi]."""
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = f(d)
    return (a + b) / 2.0


@dataclass(frozen=True)
class MinMaxConstant:
    """min over x of max(1/3 + x^2/12, 1/2 - x/2), found numerically.

    The exact optimum sits where the two branches cross:
    x = sqrt(11) - 3 and value (4 - sqrt(11)) / 2.
    """

    value: float
    x: float
    exact_value: float
    exact_x: float

    def to_json(self) -> dict:
        return {"value": self.value, "x": self.x,
                "exact_value": self.exact_value, "exact_x": self.exact_x}


def minmax_constant(tol: float = 1e-12) -> MinMaxConstant:
    def f(x: float) -> float:
        return max(1.0 / 3.0 + x * x / 12.0, 0.5 - x / 2.0)

    # coarse grid to bracket the minimum, then golden-section refinement
    grid = [i * 1e-3 for i in range(0, 1001)]
    best = min(grid, key=f)
    lo = max(0.0, best - 2e-3)
    hi = min(1.0, best + 2e-3)
    x = _golden_min(f, lo, hi, tol)
    return MinMaxConstant(f(x), x, (4.0 - math.sqrt(11.0)) / 2.0,
                          math.sqrt(11.0) - 3.0)


@dataclass(frozen=True)
class LowerBoundValues:
    """Proven lower-bound constants for twin density at alphabet size k.

    per_letter: the easy density 1/k.
    improved: 1.02/k, available for k >= 3.
    minmax: the k = 3 refinement constant (4 - sqrt(11))/2 with its
        numeric minimization record.
    linear_slope and linear_offset: twins of length at least
    slope * n - offset exist in every word, with slope 3^(-4/3) k^(-2/3)
    and offset 3^(-1/3) k^(1/3).
    """

    k: int
    per_letter: Fraction
    improved: Optional[Fraction]
    minmax: MinMaxConstant
    linear_slope: float
    linear_offset: float

    def to_json(self) -> dict:
        return {"k": self.k,
                "per_letter": float(self.per_letter),
                "improved": float(self.improved)
                if self.improved is not None else None,
                "minmax": self.minmax.to_json(),
                "linear_slope": self.linear_slope,
                "linear_offset": self.linear_offset}


def lower_bound_values(k: int) -> LowerBoundValues:
    if k < 2:
        raise ValueError(f"alphabet size must be >= 2, got {k}")
    improved = Fraction(102, 100 * k) if k >= 3 else None
    slope = 3.0 ** (-4.0 / 3.0) * k ** (-2.0 / 3.0)
    offset = 3.0 ** (-1.0 / 3.0) * k ** (1.0 / 3.0)
    return LowerBoundValues(k, Fraction(1, k), improved, minmax_constant(),
                            slope, offset)


# -- images of strongly monotone maps ----------------------------------------


TwoVar = Union[Callable[[int, int], int], Sequence[Sequence[int]]]


def _as_map(f: TwoVar, s: int) -> Callable[[int, int], int]:
    """Normalize a callable or an s-by-s table to a 1-based map."""
    if callable(f):
        return f
    rows = [tuple(row) for row in f]
    if len(rows) != s or any(len(row) != s for row in rows):
        raise ValueError(f"table must be {s}x{s}")
    return lambda x, y: rows[x - 1][y - 1]


@dataclass(frozen=True)
class MonotoneImageResult:
    """Size of {(f1(x,y), f2(x,z), f3(y,z))} over the cube [s]^3."""

    s: int
    size: int
    floor: int  # ceil(s^2 / 6)

    @property
    def meets_floor(self) -> bool:
        return self.size >= self.floor

    def to_json(self) -> dict:
        return {"s": self.s, "size": self.size, "floor": self.floor,
                "meets_floor": self.meets_floor}


def strong_monotonicity_violation(f: TwoVar, s: int
                                  ) -> Optional[tuple[tuple[int, int],
                                                      tuple[int, int]]]:
    """A pair of cells certifying that f is not strongly monotone on
    [s]^2 (nondecreasing in each argument, strictly increasing when both
    grow), or None."""
    g = _as_map(f, s)
    for x in range(1, s + 1):
        for y in range(1, s + 1):
            if x < s and g(x + 1, y) < g(x, y):
                return ((x, y), (x + 1, y))
            if y < s and g(x, y + 1) < g(x, y):
                return ((x, y), (x, y + 1))
            if x < s and y < s and g(x + 1, y + 1) <= g(x, y):
                return ((x, y), (x + 1, y + 1))
    return None


def monotone_image(f1: TwoVar, f2: TwoVar, f3: TwoVar,
                   s: int) -> MonotoneImageResult:
    """Count the combined image; raises ValueError when any input map
    fails strong monotonicity (with the violating cells)."""
    if s < 1:
        raise ValueError(f"side must be >= 1, got {s}")
    maps = []
    for name, f in (("f1", f1), ("f2", f2), ("f3", f3)):
        bad = strong_monotonicity_violation(f, s)
        if bad is not None:
            raise ValueError(f"{name} is not strongly monotone: cells {bad}")
        maps.append(_as_map(f, s))
    g1, g2, g3 = maps
    image = {(g1(x, y), g2(x, z), g3(y, z))
             for x, y, z in itertools.product(range(1, s + 1), repeat=3)}
    return MonotoneImageResult(s, len(image), -(-s * s // 6))


def sharp_image_tables(s: int) -> tuple[list[list[int]], list[list[int]],
                                        list[list[int]]]:
    """Tables whose combined image has size exactly s^2: each is the
    projection to its first argument, so the triple (x, x, y) forgets
    the third cube coordinate entirely."""
    proj = [[x for _ in range(s)] for x in range(1, s + 1)]
    return proj, [row[:] for row in proj], [row[:] for row in proj]


def random_strongly_monotone(s: int,
                             rng: np.random.Generator) -> list[list[int]]:
    """Sample a strongly monotone table on [s]^2: each entry tops its
    left, upper and (strictly) diagonal neighbors, plus a random
    increment."""
    padded = [[0] * (s + 1) for _ in range(s + 1)]
    for x in range(1, s + 1):
        for y in range(1, s + 1):
            base = max(padded[x - 1][y], padded[x][y - 1],
                       padded[x - 1][y - 1] + 1)
            padded[x][y] = base + int(rng.integers(0, 4))
    return [row[1:] for row in padded[1:]]
