"""Experiments: RNG discipline, tail estimation, conjecture search, suites."""

import csv
import json
import math
from fractions import Fraction

import numpy as np
import pytest

from oracles import brute_lcs
from twinlcs import (
    BudgetError,
    ExperimentConfig,
    PermutationDistribution,
    SUITES,
    estimate_lt_tail,
    expected_lcs,
    lt_oracle,
    minimize_expected_lcs,
    pairwise_lcs_table,
    permutations_of,
    sample_word,
    substream,
    threshold_pairs,
    verify_suite,
    wilson_interval,
    write_csv,
    write_json,
    write_jsonl,
)


# -- rng discipline -------------------------------------------------------------


def test_substream_determinism_and_independence():
    a = substream(7, 3).integers(0, 1000, size=8)
    b = substream(7, 3).integers(0, 1000, size=8)
    c = substream(7, 4).integers(0, 1000, size=8)
    d = substream(8, 3).integers(0, 1000, size=8)
    assert (a == b).all()
    assert not (a == c).all()
    assert not (a == d).all()


def test_sample_word():
    w = sample_word(3, 20, 11, index=2)
    assert w == sample_word(3, 20, 11, index=2)
    assert w != sample_word(3, 20, 11, index=3)
    assert len(w) == 20 and w.k == 3
    assert all(1 <= a <= 3 for a in w)
    assert sample_word(1, 5, 0).letters == (1, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        sample_word(0, 5, 0)


def test_sample_word_is_uniform_enough():
    # letter frequencies stay within 5 sigma on a large sample
    counts = [0, 0, 0]
    for i in range(300):
        for a in sample_word(3, 30, 99, index=i):
            counts[a - 1] += 1
    total = sum(counts)
    expected = total / 3
    sigma = math.sqrt(total * (1 / 3) * (2 / 3))
    for c in counts:
        assert abs(c - expected) < 5 * sigma


def test_wilson_interval():
    lo, hi = wilson_interval(8, 10)
    # standard Wilson score values for 8/10 at z = 1.96
    assert lo == pytest.approx(0.4901, abs=2e-3)
    assert hi == pytest.approx(0.9433, abs=2e-3)
    assert wilson_interval(0, 10)[0] == 0.0
    assert wilson_interval(10, 10)[1] == pytest.approx(1.0)
    lo, hi = wilson_interval(5, 10)
    assert lo < 0.5 < hi
    with pytest.raises(ValueError):
        wilson_interval(1, 0)
    with pytest.raises(ValueError):
        wilson_interval(11, 10)


def test_threshold_pairs():
    assert threshold_pairs(0.5, 12) == 6
    assert threshold_pairs(1 / 3, 12) == 4    # float fuzz must not bump to 5
    assert threshold_pairs(0.3, 11) == 4      # genuine ceil
    assert threshold_pairs(0.0, 9) == 0
    with pytest.raises(ValueError):
        threshold_pairs(-0.1, 4)


# -- tail estimation --------------------------------------------------------------


def test_tail_exhaustive_route():
    est = estimate_lt_tail(2, 12, 0.5)
    assert est.method == "exhaustive"
    assert est.exact == Fraction(317, 1024)
    assert est.pairs == 6
    assert est.lo == est.hi == est.probability == pytest.approx(317 / 1024)
    assert est.trials == 4096


def test_tail_alpha_zero_short_circuits():
    est = estimate_lt_tail(5, 40, 0.0)
    assert est.method == "exact"
    assert est.exact == 1
    assert est.probability == 1.0


def test_tail_monte_carlo_route():
    config = ExperimentConfig(seed=5, trials=60)
    est = estimate_lt_tail(3, 10, 0.4, config)
    assert est.method == "monte-carlo"
    assert est.trials == 60
    assert 0.0 <= est.lo <= est.probability <= est.hi <= 1.0
    again = estimate_lt_tail(3, 10, 0.4, config)
    assert (again.successes, again.probability) == (est.successes,
                                                    est.probability)
    assert est.exact is None


def test_tail_monte_carlo_interval_covers_truth():
    # exhaustive truth over [2]^13 via the enumeration oracle, compared
    # against an independent Monte Carlo run
    import itertools
    from twinlcs import Word
    m = threshold_pairs(0.4, 13)
    hits = sum(1 for ls in itertools.product((1, 2), repeat=13)
               if lt_oracle(Word(ls, 2), max_length=13) >= m)
    truth = hits / 2 ** 13
    config = ExperimentConfig(seed=3, trials=400)
    est = estimate_lt_tail(2, 13, 0.4, config)
    assert est.method == "monte-carlo"
    assert est.lo <= truth <= est.hi


# -- permutation distributions ------------------------------------------------------


def test_permutations_of():
    perms = permutations_of(3)
    assert perms == ((1, 2, 3), (1, 3, 2), (2, 1, 3),
                     (2, 3, 1), (3, 1, 2), (3, 2, 1))
    assert len(permutations_of(4)) == 24


def test_pairwise_lcs_table():
    table = pairwise_lcs_table(3)
    perms = permutations_of(3)
    assert table.shape == (6, 6)
    assert (table == table.T).all()
    for i in range(6):
        assert table[i, i] == 3
        for j in range(6):
            assert table[i, j] == brute_lcs(perms[i], perms[j])
    # the three reverse pairs meet only in one letter
    assert table[0, 5] == table[1, 3] == table[2, 4] == 1
    with pytest.raises(BudgetError):
        pairwise_lcs_table(7)


def test_distribution_validation():
    uniform = PermutationDistribution.uniform(3)
    assert uniform.exact
    assert sum(uniform.weights) == 1
    point = PermutationDistribution.point_mass(3, 0)
    assert point.weights[0] == 1
    assert point.support() == ((1, 2, 3),)
    with pytest.raises(ValueError):
        PermutationDistribution(3, (1, 0))  # wrong length
    with pytest.raises(ValueError):
        PermutationDistribution(2, (2, -1))
    with pytest.raises(ValueError):
        PermutationDistribution(2, (0.7, 0.2))


def test_expected_lcs_exact_values():
    assert expected_lcs(PermutationDistribution.uniform(2)) == Fraction(3, 2)
    assert expected_lcs(PermutationDistribution.uniform(3)) == 2
    assert expected_lcs(PermutationDistribution.point_mass(4, 7)) == 4
    uniform = PermutationDistribution.uniform(3)
    float_dist = PermutationDistribution(3, tuple(float(w)
                                                  for w in uniform.weights))
    assert expected_lcs(float_dist) == pytest.approx(2.0)


def test_minimize_expected_lcs():
    res2 = minimize_expected_lcs(2, ExperimentConfig(seed=0, starts=40))
    assert float(res2.value) == pytest.approx(1.5, abs=1e-9)
    assert not res2.below_conjectured_floor
    res3 = minimize_expected_lcs(3, ExperimentConfig(seed=0, starts=40))
    assert float(res3.value) == pytest.approx(2.0, abs=1e-9)
    assert float(res3.value) >= math.sqrt(3)
    assert not res3.below_conjectured_floor
    assert float(res3.uniform_value) == pytest.approx(2.0)
    # determinism
    again = minimize_expected_lcs(3, ExperimentConfig(seed=0, starts=40))
    assert again.value == res3.value
    assert again.best_start == res3.best_start


def test_minimize_beats_uniform_at_k4():
    # the uniform distribution is not optimal at k = 4; the optimizer
    # should land strictly below it while staying above the sqrt(k) floor
    res = minimize_expected_lcs(4, ExperimentConfig(seed=0, starts=30))
    assert float(res.value) == pytest.approx(2.25, abs=1e-6)
    assert float(res.value) < float(res.uniform_value)
    assert not res.below_conjectured_floor


# -- verification suites ---------------------------------------------------------------


def test_suites_all_pass():
    for name in SUITES:
        report = verify_suite(name)
        assert report.ok, report.summary_lines()
        assert report.suite == name
        assert all(c.ok for c in report.checks)
        lines = report.summary_lines()
        assert lines[-1].startswith(f"suite {name}:")
        assert all(line.startswith("[PASS]") for line in lines[:-1])


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify_suite("nope")


# -- persistence -------------------------------------------------------------------


def test_write_json(tmp_path):
    path = tmp_path / "out.json"
    write_json(str(path), {"hello": 1})
    doc = json.loads(path.read_text())
    assert doc["schema_version"] == 1
    assert doc["hello"] == 1


def test_write_jsonl(tmp_path):
    path = tmp_path / "out.jsonl"
    write_jsonl(str(path), [{"a": 1}, {"a": 2}])
    lines = [json.loads(line) for line in path.read_text().splitlines()]
    assert [d["a"] for d in lines] == [1, 2]
    assert all(d["schema_version"] == 1 for d in lines)


def test_write_csv(tmp_path):
    path = tmp_path / "out.csv"
    write_csv(str(path), [{"a": 1, "b": 2}, {"a": 3, "b": 4}])
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    assert rows[0]["a"] == "1"
    assert rows[0]["schema_version"] == "1"
    assert len(rows) == 2


def test_config_validation():
    cfg = ExperimentConfig(seed=1, trials=5)
    assert cfg.trials == 5
    with pytest.raises(ValueError):
        ExperimentConfig(trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig(seed=-1)
    with pytest.raises(ValueError):
        ExperimentConfig(starts=0)
    with pytest.raises(ValueError):
        ExperimentConfig(exhaustive_cap=0)
