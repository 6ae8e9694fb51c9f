import math

import numpy as np
import pytest

import seqmem


def test_patterns_shape_and_values():
    xs = seqmem.generate_patterns(50, 7, seed=3)
    assert xs.shape == (7, 50)
    assert set(np.unique(xs)) <= {-1, 1}
    assert np.array_equal(xs, seqmem.generate_patterns(50, 7, seed=3))


def test_seqnet_walks_small_sequence():
    xs = seqmem.generate_patterns(200, 5, seed=1)
    cfg = seqmem.RuleConfig("seqnet")
    states, overlaps = seqmem.run_sequence(xs[0], xs, cfg, 4)
    assert states.shape == (5, 200)
    assert overlaps.shape == (5, 5)
    for t in range(5):
        assert np.array_equal(states[t], xs[t])
    assert seqmem.sequence_correct(xs, cfg)


def test_update_matches_direct_formula():
    xs = seqmem.generate_patterns(40, 6, seed=2)
    cfg = seqmem.RuleConfig("densenet", "poly:3", overlap="full")
    s = xs[2]
    m = xs @ s / 40.0
    field = np.roll(xs, -1, axis=0).T @ (m ** 3)
    expected = np.where(field >= 0, 1, -1)
    assert np.array_equal(seqmem.update(s, xs, cfg), expected)


def test_gpi_recalls_correlated_sequence():
    xs = seqmem.generate_patterns(60, 30, seed=4, epsilon=0.4)
    rep = seqmem.run_recall(xs, seqmem.RuleConfig("gpi", "poly:2"))
    assert rep["accuracy"] == 1.0


def test_capacity_estimate_dict():
    est = seqmem.estimate_capacity(seqmem.RuleConfig("densenet", "poly:2"), 40, "transition",
                                   seed=1, n_sequences=10, n_repeats=2)
    assert len(est["capacities"]) == 2
    assert est["theory"] == pytest.approx(seqmem.poly_densenet_capacity(40, 2, "transition"))


def test_crosstalk_dict():
    stats = seqmem.sample_crosstalk(seqmem.RuleConfig("densenet", "poly:2"), 30, 10, samples=20000, seed=1)
    assert stats["n_samples"] == 20000
    assert stats["empirical"]["term_variance"] > 0
    assert stats["theory"]["term_variance"] == pytest.approx(3.0 / 30 ** 2)


def test_theory_values():
    assert seqmem.beta_constant() == pytest.approx(2.0 / (1.0 + math.exp(-4.0)), rel=1e-14)
    assert seqmem.gamma_factor(2, 2, 2.5) == 26.75
    assert seqmem.double_factorial(7) == 105
    assert seqmem.gaussian_tail(0.0) == 0.5
    _, argmax = seqmem.max_degree_profile(51)
    assert abs(argmax - 25) <= 1


def test_pseudoinverse():
    xs = seqmem.generate_patterns(60, 20, seed=5)
    o = seqmem.overlap_matrix(xs)
    pinv = seqmem.pseudoinverse_psd(o)
    assert np.allclose(o @ pinv @ o, o, atol=1e-10)


def test_bad_rule_raises():
    with pytest.raises(ValueError):
        seqmem.RuleConfig("nonsense")
