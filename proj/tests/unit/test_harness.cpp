#include <gtest/gtest.h>

#include <cmath>

#include "seqmem/harness.hpp"
#include "seqmem/numerics.hpp"

using namespace seqmem;

namespace {

bool serial_sequence_ok(const PatternSet& ps, const RuleConfig& cfg) {
  if (!cfg.is_sequential()) {
    // Autoassociative rules: every stored pattern must be a fixed point.
    for (int mu = 0; mu < ps.n_patterns(); ++mu) {
      const auto traj = run_sequence(ps.pattern(mu), ps, cfg, 1, false);
      if (!(traj.states[1] == ps.pattern(mu))) return false;
    }
    return true;
  }
  const auto traj = run_sequence(ps.pattern(0), ps, cfg, ps.n_patterns(), false);
  for (int t = 0; t <= ps.n_patterns(); ++t) {
    if (!(traj.states[t] == ps.pattern(t))) return false;
  }
  return true;
}

bool single_transition_ok(const PatternSet& ps, const RuleConfig& cfg) {
  const auto traj = run_sequence(ps.pattern(0), ps, cfg, 1, false);
  return traj.states[1] == ps.pattern(cfg.is_sequential() ? 1 : 0);
}

CapacityProtocolConfig quick_protocol(int threads) {
  CapacityProtocolConfig proto;
  proto.n_sequences = 20;
  proto.n_repeats = 3;
  proto.threads = threads;
  return proto;
}

}  // namespace

TEST(Harness, SequenceCheckMatchesSerialRun) {
  const std::vector<RuleConfig> rules = {
      RuleConfig::seqnet(),
      RuleConfig::densenet(InteractionFunction::polynomial(2)),
      RuleConfig::densenet(InteractionFunction::polynomial(3)),
      RuleConfig::densenet(InteractionFunction::exponential()),
      RuleConfig::hopfield(),
      RuleConfig::mhn(InteractionFunction::polynomial(2)),
      RuleConfig::mixednet(InteractionFunction::polynomial(3), InteractionFunction::polynomial(3), 2.5, 1),
      RuleConfig::gpi(InteractionFunction::polynomial(2))};
  int agree_pass = 0;
  int agree_fail = 0;
  for (const auto& cfg : rules) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const int n = 40 + static_cast<int>(seed) * 3;
      const int p = cfg.rule == RuleKind::GPI ? n - 5 : 6 + static_cast<int>(seed) * 9;
      const auto ps = generate_patterns(PatternDistribution::rademacher(seed), n, p);
      const bool fast = sequence_correct(ps, cfg);
      ASSERT_EQ(fast, serial_sequence_ok(ps, cfg)) << cfg.describe() << " seed " << seed;
      (fast ? agree_pass : agree_fail)++;
      ASSERT_EQ(transition_correct(ps, cfg), single_transition_ok(ps, cfg))
          << cfg.describe() << " seed " << seed;
    }
  }
  EXPECT_GT(agree_pass, 10);
  EXPECT_GT(agree_fail, 10);
}

TEST(Harness, GpiLeastSquaresRouteMatchesPseudoinverse) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto ps = generate_patterns(PatternDistribution::biased(0.5, seed), 60, 20 + static_cast<int>(seed));
    for (const auto& f : {InteractionFunction::polynomial(2), InteractionFunction::exponential()}) {
      const auto cfg = RuleConfig::gpi(f);
      ASSERT_EQ(transition_correct(ps, cfg), single_transition_ok(ps, cfg)) << seed;
    }
  }
}

TEST(Harness, MixedNetWithMemoryRejectedBySequenceCheck) {
  const auto ps = generate_patterns(PatternDistribution::rademacher(0), 50, 10);
  const auto f = InteractionFunction::polynomial(2);
  EXPECT_THROW(sequence_correct(ps, RuleConfig::mixednet(f, f, 2.5, 5)), std::invalid_argument);
}

TEST(Harness, CapacityIsThreadInvariant) {
  const auto cfg = RuleConfig::densenet(InteractionFunction::polynomial(2));
  for (auto kind : {CapacityKind::Transition, CapacityKind::Sequence}) {
    const auto a = estimate_capacity(cfg, 60, kind, quick_protocol(1), 42);
    const auto b = estimate_capacity(cfg, 60, kind, quick_protocol(4), 42);
    EXPECT_EQ(a.capacities, b.capacities);
    EXPECT_EQ(a.rounds, b.rounds);
    for (int c : a.capacities) EXPECT_GE(c, 2);
    EXPECT_GE(a.stddev, 0.0);
  }
}

TEST(Harness, CapacityDegenerateSmallNetwork) {
  const auto est = estimate_capacity(RuleConfig::densenet(InteractionFunction::polynomial(2)), 4,
                                     CapacityKind::Transition, quick_protocol(1), 1);
  ASSERT_EQ(est.capacities.size(), 3U);
  for (int c : est.capacities) EXPECT_GE(c, 2);
}

TEST(Harness, CapacityDoublesWhenStartingBelow) {
  auto proto = quick_protocol(1);
  proto.p0_override = 3;
  const auto est = estimate_capacity(RuleConfig::densenet(InteractionFunction::polynomial(2)), 60,
                                     CapacityKind::Transition, proto, 5);
  for (int p0 : est.starting_p) EXPECT_GT(p0, 3);
}

TEST(Harness, CapacityProtocolValidation) {
  CapacityProtocolConfig bad;
  bad.decay = 1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad.decay = 0.5;
  bad.n_sequences = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  CapacityProtocolConfig tiny = quick_protocol(1);
  tiny.max_rounds = 1;
  EXPECT_THROW(estimate_capacity(RuleConfig::densenet(InteractionFunction::polynomial(2)), 60,
                                 CapacityKind::Transition, tiny, 0),
               std::runtime_error);
}

TEST(Harness, CrosstalkPolynomialVarianceMatchesTheory) {
  for (int d : {1, 2, 3}) {
    for (int n : {50, 100, 300}) {
      const auto cfg = RuleConfig::densenet(InteractionFunction::polynomial(d));
      const auto st = sample_crosstalk(cfg, n, 20, 20000, 100 + d * 1000 + n, 50, 1);
      EXPECT_LT(std::fabs(st.term_variance - st.theory_term_variance_exact), 3.0 * st.term_variance_se)
          << d << " " << n;
      std::int64_t total = 0;
      for (auto c : st.histogram.counts) total += c;
      EXPECT_EQ(total, st.n_samples);
    }
  }
}

TEST(Harness, CrosstalkIsThreadInvariant) {
  const auto cfg = RuleConfig::densenet(InteractionFunction::exponential());
  const auto a = sample_crosstalk(cfg, 11, 50, 10000, 9, 40, 1);
  const auto b = sample_crosstalk(cfg, 11, 50, 10000, 9, 40, 3);
  EXPECT_EQ(a.variance, b.variance);
  EXPECT_EQ(a.histogram.counts, b.histogram.counts);
}

TEST(Harness, CrosstalkMixedBranches) {
  const auto f = InteractionFunction::polynomial(3);
  const auto st = sample_crosstalk(RuleConfig::mixednet(f, f, 2.5, 1), 100, 200, 20000, 3, 100, 1);
  ASSERT_TRUE(st.mixed);
  EXPECT_NEAR(st.plus.mean, 1.0, 0.05);
  EXPECT_NEAR(st.minus.mean, -1.0, 0.05);
  EXPECT_NEAR(st.plus.weight, 0.5, 0.02);
  EXPECT_EQ(st.histogram_modes, 2);
}

TEST(Harness, HistogramModes) {
  std::vector<double> uni;
  std::vector<double> bi;
  CounterRng rng(1, 2);
  for (int i = 0; i < 20000; ++i) {
    const double g = gaussian_tail_inv(0.5 * (1.0 - rng.uniform()) + 1e-12) * ((rng() >> 63) ? 1 : -1);
    uni.push_back(g);
    bi.push_back(g * 0.3 + ((rng() >> 63) ? 2.0 : -2.0));
  }
  EXPECT_EQ(make_histogram(uni, 60).modes(), 1);
  EXPECT_EQ(make_histogram(bi, 60).modes(), 2);
}

TEST(Harness, DwellAnalysisDenseNet) {
  const auto ps = generate_patterns(PatternDistribution::rademacher(3), 300, 100);
  const auto traj = run_sequence(ps.pattern(0), ps, RuleConfig::densenet(InteractionFunction::polynomial(2)), 120);
  const auto rep = dwell_analysis(traj);
  EXPECT_TRUE(rep.order_correct);
  EXPECT_FALSE(rep.lost);
  EXPECT_TRUE(rep.dwell_uniform);
  for (const auto& s : rep.segments) EXPECT_EQ(s.length, 1);
}

TEST(Harness, DwellAnalysisMixedNet) {
  const auto ps = generate_patterns(PatternDistribution::rademacher(4), 100, 40);
  auto run = [&](int d) {
    const auto f = InteractionFunction::polynomial(d);
    return dwell_analysis(run_sequence(ps.pattern(0), ps, RuleConfig::mixednet(f, f, 2.5, 5), 5 * 42));
  };
  const auto d2 = run(2);
  EXPECT_TRUE(d2.order_correct);
  EXPECT_FALSE(d2.dwell_uniform && d2.patterns_with_dwell(5) >= 38);
  const auto d1 = run(1);
  EXPECT_TRUE(d1.lost);
}

TEST(Harness, RecallDetectsRepeatedState) {
  // Strongly correlated patterns pull the polynomial network into a fixed point.
  const auto ps = generate_patterns(PatternDistribution::biased(0.6, 6), 100, 300);
  const auto stuck = run_recall(ps, RuleConfig::densenet(InteractionFunction::polynomial(2)), -1, {1, 50});
  EXPECT_LT(stuck.accuracy, 1.0);
  EXPECT_TRUE(stuck.repeated_state);
  EXPECT_LT(stuck.repeat_of, stuck.first_repeat_t);
  EXPECT_EQ(stuck.overlap_with_target.size(), 300U);
  ASSERT_EQ(stuck.dumps.size(), 2U);
  EXPECT_EQ(stuck.dumps[0].first, 1);

  const auto good_ps = generate_patterns(PatternDistribution::rademacher(6), 100, 40);
  const auto good = run_recall(good_ps, RuleConfig::densenet(InteractionFunction::exponential()));
  EXPECT_DOUBLE_EQ(good.accuracy, 1.0);
  EXPECT_FALSE(good.repeated_state);
}

TEST(Harness, BiasSweepCoupledAndOrdered) {
  CapacityProtocolConfig proto = quick_protocol(1);
  proto.p0_override = 200;
  const auto rows = bias_sweep({RuleConfig::densenet(InteractionFunction::polynomial(2)),
                                RuleConfig::gpi(InteractionFunction::polynomial(2))},
                               40, {0.0, 0.5}, proto, 3);
  ASSERT_EQ(rows.size(), 4U);
  EXPECT_GT(rows[0].estimate.mean, rows[1].estimate.mean);
  EXPECT_GT(rows[3].estimate.mean, rows[1].estimate.mean);
  EXPECT_THROW(bias_sweep({RuleConfig::seqnet()}, 40, {1.0}, proto, 0), std::invalid_argument);
}
