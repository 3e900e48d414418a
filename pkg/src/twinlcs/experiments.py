"""Seeded experiments, expected-LCS minimization, and verification suites.

Randomness is counter-based: every trial or start draws from its own
Philox substream keyed by (master seed, trial index), so results do not
depend on execution order and identical configs reproduce identical
output byte for byte.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .errors import BudgetError
from .lcs import DEFAULT_BUDGET_CELLS, lcs_len
from .twins import (DEFAULT_NODE_BUDGET, find_regularity_violation,
                    is_monotone, is_twin_roles, lt_exact, lt_oracle,
                    random_monotone_certificate, regularize, role_stats,
                    run_count, twins_via_blocks, twins_via_runs)
from .words import Word

SCHEMA_VERSION = 1
Z95 = 1.959963984540054
MAX_TABLE_K = 6
SUITES = ("constructions", "roles", "twins-oracle", "bounds", "lemmas")


@dataclass(frozen=True)
class ExperimentConfig:
    """Full parameter set of a seeded experiment; reruns with an equal
    config produce bit-identical results."""

    seed: int = 0
    trials: int = 1000
    k: Optional[int] = None
    n: Optional[int] = None
    alpha: Optional[float] = None
    t: Optional[int] = None
    starts: int = 100
    budget_nodes: int = DEFAULT_NODE_BUDGET
    budget_cells: int = DEFAULT_BUDGET_CELLS
    exhaustive_cap: int = 4096
    out: Optional[str] = None

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.starts < 1:
            raise ValueError("starts must be positive")
        if self.budget_nodes < 1 or self.budget_cells < 1:
            raise ValueError("budgets must be positive")
        if self.exhaustive_cap < 1:
            raise ValueError("exhaustive cap must be positive")

    def to_json(self) -> dict:
        return {"seed": self.seed, "trials": self.trials, "k": self.k,
                "n": self.n, "alpha": self.alpha, "t": self.t,
                "starts": self.starts, "budget_nodes": self.budget_nodes,
                "budget_cells": self.budget_cells,
                "exhaustive_cap": self.exhaustive_cap, "out": self.out}


def substream(seed: int, index: int) -> np.random.Generator:
    """Independent deterministic generator for one trial of a run."""
    key = np.array([seed, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_word(k: int, n: int, seed: int, index: int = 0) -> Word:
    """Uniform random word over [k]^n, deterministic per (seed, k, n,
    index)."""
    if k < 1:
        raise ValueError(f"alphabet size must be >= 1, got {k}")
    if n < 0:
        raise ValueError(f"length must be >= 0, got {n}")
    rng = substream(seed, index)
    letters = tuple(int(x) for x in rng.integers(1, k + 1, size=n))
    return Word(letters, k)


def wilson_interval(successes: int, trials: int,
                    z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    if not 0 <= successes <= trials:
        raise ValueError("successes out of range")
    phat = successes / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials
                         + z * z / (4.0 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


# -- twin-length tail estimation ---------------------------------------------


def threshold_pairs(alpha: float, n: int) -> int:
    """ceil(alpha * n) with protection against float fuzz at integers."""
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    value = alpha * n
    nearest = round(value)
    if abs(value - nearest) < 1e-9:
        return int(nearest)
    return math.ceil(value)


@dataclass(frozen=True)
class TailEstimate:
    """Estimated Pr[LT(w) >= ceil(alpha n)] for uniform w over [k]^n."""

    k: int
    n: int
    alpha: float
    pairs: int
    probability: float
    lo: float
    hi: float
    trials: int
    successes: int
    method: str  # "exact", "exhaustive" or "monte-carlo"
    exact: Optional[Fraction]
    config: ExperimentConfig

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "alpha": self.alpha,
                "pairs": self.pairs, "probability": self.probability,
                "lo": self.lo, "hi": self.hi, "trials": self.trials,
                "successes": self.successes, "method": self.method,
                "exact": str(self.exact) if self.exact is not None else None,
                "config": self.config.to_json()}


def estimate_lt_tail(k: int, n: int, alpha: float,
                     config: Optional[ExperimentConfig] = None
                     ) -> TailEstimate:
    """Probability that a uniform word has twins of length >= alpha * n.

    Exhaustive (exact fraction, collapsed interval) when k^n is at most
    the configured cap; Monte Carlo with a Wilson 95% interval
    otherwise, one solver call per trial substream.
    """
    config = config or ExperimentConfig()
    if k < 1:
        raise ValueError(f"alphabet size must be >= 1, got {k}")
    if n < 0:
        raise ValueError(f"length must be >= 0, got {n}")
    m = threshold_pairs(alpha, n)
    if m == 0:
        return TailEstimate(k, n, alpha, 0, 1.0, 1.0, 1.0, 0, 0, "exact",
                            Fraction(1), config)
    if k ** n <= config.exhaustive_cap:
        total = k ** n
        hits = 0
        for letters in itertools.product(range(1, k + 1), repeat=n):
            if lt_oracle(Word(letters, k), max_length=n) >= m:
                hits += 1
        frac = Fraction(hits, total)
        p = float(frac)
        return TailEstimate(k, n, alpha, m, p, p, p, total, hits,
                            "exhaustive", frac, config)
    hits = 0
    for trial in range(config.trials):
        word = sample_word(k, n, config.seed, index=trial)
        cert = lt_exact(word, budget_nodes=config.budget_nodes)
        if cert.length >= m:
            hits += 1
    lo, hi = wilson_interval(hits, config.trials)
    return TailEstimate(k, n, alpha, m, hits / config.trials, lo, hi,
                        config.trials, hits, "monte-carlo", None, config)


# -- distributions on permutations and the expected-LCS form ------------------


@lru_cache(maxsize=None)
def permutations_of(k: int) -> tuple[tuple[int, ...], ...]:
    """All permutations of [k] in lexicographic order."""
    if k < 1:
        raise ValueError(f"alphabet size must be >= 1, got {k}")
    return tuple(itertools.permutations(range(1, k + 1)))


@lru_cache(maxsize=None)
def _lcs_table_cached(k: int) -> np.ndarray:
    perms = permutations_of(k)
    words = [Word(p, k) for p in perms]
    size = len(words)
    table = np.zeros((size, size), dtype=np.int16)
    for i in range(size):
        table[i, i] = k
        for j in range(i + 1, size):
            value = lcs_len(words[i], words[j])
            table[i, j] = value
            table[j, i] = value
    table.setflags(write=False)
    return table


def pairwise_lcs_table(k: int, *, max_k: int = MAX_TABLE_K) -> np.ndarray:
    """Symmetric k! x k! table of LCS values between permutations of [k]
    in lexicographic order.  Capped: the table is quadratic in k!."""
    if k < 1:
        raise ValueError(f"alphabet size must be >= 1, got {k}")
    if k > max_k:
        raise BudgetError(
            f"pairwise LCS table needs {math.factorial(k)}^2 entries; "
            f"cap is k <= {max_k}")
    return _lcs_table_cached(k)


Weight = Union[Fraction, int, float]


@dataclass(frozen=True)
class PermutationDistribution:
    """Probability weights over all permutations of [k], in
    lexicographic order.  Rational weights must sum to exactly 1; real
    weights to 1 within 1e-12."""

    k: int
    weights: tuple

    def __post_init__(self) -> None:
        size = math.factorial(self.k)
        if len(self.weights) != size:
            raise ValueError(
                f"need {size} weights for k={self.k}, got {len(self.weights)}")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        total = sum(self.weights)
        if self.exact:
            if total != 1:
                raise ValueError(f"rational weights must sum to 1, got {total}")
        elif abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1 within 1e-12, got {total}")

    @property
    def exact(self) -> bool:
        return all(isinstance(w, (Fraction, int)) for w in self.weights)

    def support(self) -> tuple[tuple[int, ...], ...]:
        perms = permutations_of(self.k)
        return tuple(perms[i] for i, w in enumerate(self.weights) if w > 0)

    @classmethod
    def uniform(cls, k: int) -> "PermutationDistribution":
        size = math.factorial(k)
        return cls(k, (Fraction(1, size),) * size)

    @classmethod
    def point_mass(cls, k: int, index: int) -> "PermutationDistribution":
        size = math.factorial(k)
        if not 0 <= index < size:
            raise ValueError(f"index must lie in [0, {size}), got {index}")
        return cls(k, tuple(1 if i == index else 0 for i in range(size)))

    def to_json(self) -> dict:
        return {"k": self.k, "exact": self.exact,
                "weights": [str(w) if isinstance(w, Fraction) else w
                            for w in self.weights]}


def expected_lcs(dist: PermutationDistribution,
                 *, max_k: int = MAX_TABLE_K) -> Union[Fraction, float]:
    """E[LCS(pi, pi')] for two independent draws from the distribution,
    as the exact quadratic form over the pairwise table.  Returns a
    Fraction for rational weights, a float otherwise."""
    table = pairwise_lcs_table(dist.k, max_k=max_k)
    if dist.exact:
        total = Fraction(0)
        nonzero = [(i, w) for i, w in enumerate(dist.weights) if w]
        for i, wi in nonzero:
            for j, wj in nonzero:
                total += wi * wj * int(table[i, j])
        return total
    w = np.asarray(dist.weights, dtype=np.float64)
    return float(w @ table.astype(np.float64) @ w)


# -- conjecture minimization ---------------------------------------------------


def _local_minimum(table: np.ndarray, start: np.ndarray, *,
                   tol: float = 1e-12,
                   max_sweeps: int = 500) -> tuple[float, np.ndarray]:
    """Pairwise-exchange descent for p^T A p over the simplex.

    Each move shifts mass between two coordinates; the quadratic in the
    shift is minimized exactly on the feasible segment.  Stops at a
    sweep with no improving exchange.
    """
    a = table
    p = start.astype(np.float64).copy()
    size = len(p)
    ap = a @ p
    for _ in range(max_sweeps):
        improved = False
        for i in range(size):
            for j in range(i + 1, size):
                g = ap[j] - ap[i]
                c = a[i, i] + a[j, j] - 2.0 * a[i, j]
                lo, hi = -p[j], p[i]
                best_t = 0.0
                best_delta = 0.0
                for t in (lo, hi) if c <= 0 else (lo, hi,
                                                  min(hi, max(lo, -g / c))):
                    delta = 2.0 * t * g + t * t * c
                    if delta < best_delta:
                        best_delta = delta
                        best_t = t
                if best_delta < -tol:
                    p[i] -= best_t
                    p[j] += best_t
                    ap += best_t * (a[:, j] - a[:, i])
                    improved = True
        if not improved:
            break
    p = np.maximum(p, 0.0)
    p /= p.sum()
    return float(p @ a @ p), p


@dataclass(frozen=True)
class MinimizeResult:
    """Best local minimum of the expected LCS found by multi-start
    pairwise-exchange search; heuristic, with no global claim."""

    k: int
    value: float
    distribution: PermutationDistribution
    uniform_value: float
    starts: int
    best_start: int
    config: ExperimentConfig

    @property
    def below_conjectured_floor(self) -> bool:
        """True would refute the sqrt(k) conjecture (up to numerics)."""
        return self.value < math.sqrt(self.k) - 1e-9

    def to_json(self) -> dict:
        return {"k": self.k, "value": self.value,
                "uniform_value": self.uniform_value,
                "starts": self.starts, "best_start": self.best_start,
                "below_conjectured_floor": self.below_conjectured_floor,
                "distribution": self.distribution.to_json(),
                "config": self.config.to_json()}


def minimize_expected_lcs(k: int,
                          config: Optional[ExperimentConfig] = None,
                          *, starts: Optional[int] = None) -> MinimizeResult:
    """Multi-start local minimization of E[LCS] over distributions on
    permutations of [k].

    The uniform distribution is always start 0, so the result never
    exceeds the uniform value.  Remaining starts are Dirichlet(1) draws
    from per-start substreams.  Quadratic cost in k! per sweep; keep
    k <= 4 for routine use.
    """
    config = config or ExperimentConfig()
    n_starts = starts if starts is not None else config.starts
    if n_starts < 1:
        raise ValueError("starts must be positive")
    table = pairwise_lcs_table(k).astype(np.float64)
    size = table.shape[0]
    uniform = np.full(size, 1.0 / size)
    uniform_value = float(uniform @ table @ uniform)
    best_value, best_p, best_start = math.inf, uniform, 0
    for start_index in range(n_starts):
        if start_index == 0:
            start = uniform
        else:
            start = substream(config.seed, start_index).dirichlet(
                np.ones(size))
        value, p = _local_minimum(table, start)
        if value < best_value:
            best_value, best_p, best_start = value, p, start_index
    dist = PermutationDistribution(k, tuple(float(x) for x in best_p))
    return MinimizeResult(k, best_value, dist, uniform_value, n_starts,
                          best_start, config)


# -- verification suites -------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    ok: bool
    checks: tuple[CheckResult, ...]

    def summary_lines(self) -> list[str]:
        lines = [f"[{'PASS' if c.ok else 'FAIL'}] {c.name}"
                 + (f": {c.detail}" if c.detail else "")
                 for c in self.checks]
        lines.append(f"suite {self.suite}: "
                     f"{'all checks passed' if self.ok else 'FAILURES'}")
        return lines

    def to_json(self) -> dict:
        return {"suite": self.suite, "ok": self.ok,
                "checks": [c.to_json() for c in self.checks]}


def _run_check(name: str, fn: Callable[[], Optional[str]]) -> CheckResult:
    try:
        detail = fn()
        return CheckResult(name, True, detail or "")
    except Exception as exc:  # report, never propagate
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")


def _suite_constructions(config: ExperimentConfig) -> list[CheckResult]:
    from .constructions import (FAMILY_BUILDERS, check_family, cube_quadruple,
                                grid_pair, multiperm_quadruple,
                                quadratic_family, stratified_family,
                                tuplet_family)

    def holds(out, **kwargs) -> str:
        report = check_family(out, budget_cells=config.budget_cells, **kwargs)
        bad = [(c, v) for c, v, ok in report if not ok]
        assert not bad, f"{out.family}{out.params}: ceilings violated {bad}"
        return f"{len(report)} ceilings hold"

    checks = []
    for p in (2, 3, 5):
        checks.append(_run_check(f"quadratic p={p}",
                                 lambda p=p: holds(quadratic_family(p))))
    for n in (1, 2, 3, 4):
        checks.append(_run_check(f"cube quadruple n={n}",
                                 lambda n=n: holds(cube_quadruple(n))))
    for s, k1, k2 in ((1, 2, 2), (2, 2, 2)):
        checks.append(_run_check(
            f"grid pair explicit s={s} ({k1},{k2})",
            lambda s=s, k1=k1, k2=k2: holds(grid_pair(s=s, k1=k1, k2=k2))))
    for k, s in ((9, 2), (16, 1)):
        checks.append(_run_check(f"grid pair auto k={k} s={s}",
                                 lambda k=k, s=s: holds(grid_pair(k, s))))
    for s, dims in ((1, (2, 1, 2)), (2, (2, 1, 2)), (2, (2, 2, 2))):
        checks.append(_run_check(
            f"multiperm s={s} dims={dims}",
            lambda s=s, dims=dims: holds(multiperm_quadruple(s, *dims))))
    for kappa in (2, 3):
        checks.append(_run_check(
            f"tuplet t=2 kappa={kappa}",
            lambda kappa=kappa: holds(tuplet_family(2, kappa))))
    for k, n, ms in ((2, 8, (1, 4)), (3, 18, (1, 3, 6))):
        checks.append(_run_check(
            f"stratified k={k} n={n} ms={ms}",
            lambda k=k, n=n, ms=ms: holds(stratified_family(k, n, ms))))
    checks.append(_run_check(
        "registry lists every family",
        lambda: f"{sorted(FAMILY_BUILDERS)}"))
    return checks


def _role_census(n: int) -> Counter:
    """Exact census of all role words of length n by (pairs, switches,
    exact leading zeros).  Independent of the closed-form counter."""
    census: Counter = Counter()
    for roles in itertools.product((0, 1, 2), repeat=n):
        if roles.count(1) != roles.count(2):
            continue
        stats = role_stats(roles)
        census[(stats.pairs, stats.switches, stats.leading_zeros)] += 1
    return census


def _suite_roles(config: ExperimentConfig) -> list[CheckResult]:
    from .bounds import role_count, role_prob, union_bound
    from .twins import extract, is_regular_pair, parse_roles
    from .errors import InvalidCertificateError

    def census_matches() -> str:
        n = 8
        census = _role_census(n)
        for m in range(n // 2 + 1):
            for p in range(m + 1):
                for z in range(n - 2 * m + 1):
                    exact = sum(v for (mm, pp, zz), v in census.items()
                                if mm == m and pp == p and zz >= z)
                    got = role_count(n, m, p, z)
                    assert got == exact, (n, m, p, z, got, exact)
        return f"all (m,p,z) classes at n={n}"

    def binomial_identity() -> str:
        for m in range(1, 7):
            total = sum(role_count(2 * m, m, p, 0) for p in range(m + 1))
            assert total == math.comb(2 * m, m), m
        return "sum over switches is the central binomial"

    def reference_role_word() -> str:
        roles = parse_roles("012112021200")
        stats = role_stats(roles)
        prob = role_prob(2, stats.length, stats.pairs, stats.switches,
                         stats.leading_zeros)
        assert prob == Fraction(1, 512), prob
        hits = 0
        for letters in itertools.product((1, 2), repeat=12):
            word = Word(letters, 2)
            try:
                extract(word, roles)
            except InvalidCertificateError:
                continue
            if is_regular_pair(word, roles):
                hits += 1
        assert Fraction(hits, 4096) == prob, (hits, prob)
        return f"probability 1/512 matches {hits}/4096 enumeration"

    def union_bound_sound() -> str:
        n = 10
        tail = Counter()
        for letters in itertools.product((1, 2), repeat=n):
            tail[lt_oracle(Word(letters, 2))] += 1
        total = 2 ** n
        for m in range(n // 2 + 1):
            exact = Fraction(sum(v for lt, v in tail.items() if lt >= m),
                             total)
            assert union_bound(2, n, m) >= exact, m
        return f"dominates the exact tail at n={n}"

    return [_run_check("role count matches census", census_matches),
            _run_check("binomial identity", binomial_identity),
            _run_check("reference role word probability",
                       reference_role_word),
            _run_check("union bound dominates exact tail",
                       union_bound_sound)]


def _suite_twins_oracle(config: ExperimentConfig) -> list[CheckResult]:
    def exhaustive_binary() -> str:
        count = 0
        for n in range(1, 11):
            for letters in itertools.product((1, 2), repeat=n):
                word = Word(letters, 2)
                exact = lt_exact(word).length
                oracle = lt_oracle(word)
                assert exact == oracle, (word.to_compact(), exact, oracle)
                count += 1
        return f"{count} binary words agree"

    def random_ternary() -> str:
        for index in range(150):
            word = sample_word(3, 9, config.seed, index=index)
            exact = lt_exact(word).length
            oracle = lt_oracle(word)
            assert exact == oracle, (word.to_compact(), exact, oracle)
        return "150 random ternary words agree"

    def run_floor() -> str:
        for index in range(100):
            word = sample_word(2, 16, config.seed, index=index)
            cert = twins_via_runs(word)
            floor = (len(word) - run_count(word)) / 2
            assert cert.length >= floor, (word.to_compact(), cert.length)
        return "run construction meets its floor on 100 words"

    return [_run_check("exact solver equals oracle (binary, exhaustive)",
                       exhaustive_binary),
            _run_check("exact solver equals oracle (ternary, sampled)",
                       random_ternary),
            _run_check("run construction floor", run_floor)]


def _suite_bounds(config: ExperimentConfig) -> list[CheckResult]:
    from .bounds import (alpha_threshold, asymptotic_threshold,
                         lower_bound_values, minmax_constant, theta)

    def thresholds() -> str:
        assert alpha_threshold(2) is None
        assert alpha_threshold(3) is None
        r4 = alpha_threshold(4)
        r5 = alpha_threshold(5)
        assert r4 is not None and r4.alpha <= 0.4932 + 5e-4, r4
        assert r5 is not None and r5.alpha <= 0.48 + 5e-4, r5
        assert r4.theta < 0 and r5.theta < 0
        return f"k=4 alpha={r4.alpha:.6f}, k=5 alpha={r5.alpha:.6f}"

    def negative_above() -> str:
        r = alpha_threshold(4)
        for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
            a = r.alpha + frac * (0.5 - r.alpha)
            assert theta(a, 4).value < 0, a
        return "theta stays negative up to 1/2"

    def asymptotic_orders() -> str:
        k = 4000
        r = alpha_threshold(k)
        asy = asymptotic_threshold(k)
        assert asy.refined < asy.coarse
        assert r.alpha < asy.coarse, (r.alpha, asy.coarse)
        ratio = (r.alpha - asy.refined) * k ** 1.5
        assert 10 < ratio < 30, ratio
        return f"threshold below coarse form at k={k}, gap {ratio:.1f}k^-3/2"

    def constants() -> str:
        mc = minmax_constant()
        assert abs(mc.value - mc.exact_value) <= 1e-9
        lb = lower_bound_values(3)
        assert lb.minmax.value > float(lb.improved)
        assert abs(lb.linear_slope - 1 / 9) < 1e-12
        return f"min-max constant {mc.value:.9f}"

    return [_run_check("density thresholds", thresholds),
            _run_check("exponent negative above threshold", negative_above),
            _run_check("asymptotic ordering", asymptotic_orders),
            _run_check("lower-bound constants", constants)]


def _suite_lemmas(config: ExperimentConfig) -> list[CheckResult]:
    from .bounds import (monotone_image, random_strongly_monotone,
                         sharp_image_tables)

    def sharp_tables() -> str:
        for s in range(1, 7):
            result = monotone_image(*sharp_image_tables(s), s)
            assert result.size == s * s, (s, result.size)
        return "projection triple hits s^2 exactly for s <= 6"

    def random_tables() -> str:
        for index in range(150):
            rng = substream(config.seed, index)
            s = int(rng.integers(1, 7))
            tables = [random_strongly_monotone(s, rng) for _ in range(3)]
            result = monotone_image(*tables, s)
            assert result.meets_floor, (s, result.size, result.floor)
        return "150 random triples meet ceil(s^2/6)"

    def regularization() -> str:
        for index in range(200):
            rng = substream(config.seed, index)
            k = int(rng.integers(2, 4))
            n = int(rng.integers(4, 15))
            word = sample_word(k, n, config.seed, index=10_000 + index)
            try:
                cert = random_monotone_certificate(word, rng)
            except ValueError:
                continue  # word admits no twins
            out = regularize(cert)
            assert out.length == cert.length
            assert out.is_monotone
            assert find_regularity_violation(word, out.roles) is None
            assert out.roles <= cert.roles
        return "200 random certificates regularized"

    def block_construction() -> str:
        failures = 0
        for index in range(100):
            word = sample_word(3, 27, config.seed, index=index)
            result = twins_via_blocks(word)
            assert is_twin_roles(word, result.certificate.roles)
            assert is_monotone(result.certificate.roles)
            if not result.floor_met:
                failures += 1
        assert failures <= 1, f"{failures} floor misses out of 100"
        return f"100 block certificates valid, {failures} floor misses"

    return [_run_check("sharp image tables", sharp_tables),
            _run_check("random image floor", random_tables),
            _run_check("regularization properties", regularization),
            _run_check("block construction validity", block_construction)]


_SUITE_RUNNERS = {
    "constructions": _suite_constructions,
    "roles": _suite_roles,
    "twins-oracle": _suite_twins_oracle,
    "bounds": _suite_bounds,
    "lemmas": _suite_lemmas,
}


def verify_suite(name: str,
                 config: Optional[ExperimentConfig] = None) -> SuiteReport:
    """Run one named verification suite and report per-check results."""
    if name not in _SUITE_RUNNERS:
        raise ValueError(
            f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    config = config or ExperimentConfig()
    checks = tuple(_SUITE_RUNNERS[name](config))
    return SuiteReport(name, all(c.ok for c in checks), checks)


# -- result persistence --------------------------------------------------------


def write_json(path: str, payload: dict) -> None:
    record = {"schema_version": SCHEMA_VERSION, **payload}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_jsonl(path: str, records: Iterable[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps({"schema_version": SCHEMA_VERSION, **record},
                                sort_keys=True))
            fh.write("\n")


def write_csv(path: str, rows: Sequence[dict]) -> None:
    if not rows:
        raise ValueError("no rows to write")
    fields = ["schema_version"] + list(rows[0].keys())
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for row in rows:
            writer.writerow({"schema_version": SCHEMA_VERSION, **row})
