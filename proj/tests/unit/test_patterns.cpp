#include <gtest/gtest.h>

#include <sstream>

#include "seqmem/patterns.hpp"

using namespace seqmem;

TEST(Patterns, GenerationIsDeterministic) {
  const auto a = generate_patterns(PatternDistribution::rademacher(0), 4, 2);
  const auto b = generate_patterns(PatternDistribution::rademacher(0), 4, 2);
  EXPECT_EQ(a, b);
  const auto c = generate_patterns(PatternDistribution::rademacher(1), 300, 5);
  const auto d = generate_patterns(PatternDistribution::rademacher(2), 300, 5);
  EXPECT_FALSE(c == d);
}

double mean_entry(const PatternSet& ps) {
  double sum = 0.0;
  for (int mu = 0; mu < ps.n_patterns(); ++mu)
    for (int j = 0; j < ps.n_neurons(); ++j) sum += ps.value(mu, j);
  return sum / (static_cast<double>(ps.n_patterns()) * ps.n_neurons());
}

TEST(Patterns, BiasedMeans) {
  EXPECT_NEAR(mean_entry(generate_patterns(PatternDistribution::biased(0.0, 3), 1000, 1000)), 0.0,
              0.005);
  EXPECT_NEAR(mean_entry(generate_patterns(PatternDistribution::biased(0.6, 3), 1000, 1000)), 0.6,
              0.005);
  EXPECT_NEAR(mean_entry(generate_patterns(PatternDistribution::rademacher(5), 1000, 1000)), 0.0,
              0.005);
}

TEST(Patterns, PaddingBitsStayClear) {
  const auto ps = generate_patterns(PatternDistribution::rademacher(9), 70, 20);
  for (int mu = 0; mu < 20; ++mu) EXPECT_EQ(ps.row(mu)[1] >> 6, 0U);
  std::vector<Word> bad(2, ~Word{0});
  EXPECT_THROW(StateVector(70, bad), std::invalid_argument);
}

TEST(Patterns, InvalidGenerationArguments) {
  EXPECT_THROW(generate_patterns(PatternDistribution::rademacher(0), 1, 4), std::invalid_argument);
  EXPECT_THROW(generate_patterns(PatternDistribution::rademacher(0), 10, 1), std::invalid_argument);
  EXPECT_THROW(generate_patterns(PatternDistribution::biased(1.0, 0), 10, 4), std::invalid_argument);
}

TEST(Patterns, PeriodicIndexing) {
  const auto ps = generate_patterns(PatternDistribution::rademacher(1), 16, 5);
  EXPECT_EQ(ps.wrap(5), 0);
  EXPECT_EQ(ps.wrap(-1), 4);
  EXPECT_EQ(ps.next(4), 0);
  EXPECT_EQ(ps.pattern(7), ps.pattern(2));
}

TEST(Patterns, OverlapExamples) {
  const auto ps = generate_patterns(PatternDistribution::rademacher(4), 64, 3);
  EXPECT_DOUBLE_EQ(overlap(ps, 1, ps.pattern(1)), 1.0);
  EXPECT_DOUBLE_EQ(overlap(ps, 1, ps.pattern(1).negated()), -1.0);

  // N = 5, exclude neuron 1: among the others 3 match and 1 mismatches.
  const std::vector<int> xi = {1, -1, 1, 1, -1};
  const std::vector<int> s = {1, 1, 1, -1, -1};
  const auto one = PatternSet::from_bipolar(5, 1, xi);
  EXPECT_DOUBLE_EQ(overlap(one, 0, StateVector::from_bipolar(s), 1), 0.5);
}

TEST(Patterns, OverlapMatrix) {
  const std::vector<int> xi = {1, -1, 1, 1};
  const auto single = PatternSet::from_bipolar(4, 1, xi);
  const Eigen::MatrixXd o1 = overlap_matrix(single);
  EXPECT_EQ(o1.rows(), 1);
  EXPECT_DOUBLE_EQ(o1(0, 0), 1.0);

  std::vector<int> twice = xi;
  twice.insert(twice.end(), xi.begin(), xi.end());
  const Eigen::MatrixXd o2 = overlap_matrix(PatternSet::from_bipolar(4, 2, twice));
  EXPECT_TRUE(o2.isApprox(Eigen::MatrixXd::Ones(2, 2)));

  const int n = 10000;
  const Eigen::MatrixXd o = overlap_matrix(generate_patterns(PatternDistribution::rademacher(8), n, 10));
  for (int a = 0; a < 10; ++a) {
    EXPECT_DOUBLE_EQ(o(a, a), 1.0);
    for (int b = 0; b < 10; ++b) {
      EXPECT_DOUBLE_EQ(o(a, b), o(b, a));
      if (a != b) EXPECT_LE(std::abs(o(a, b)), 5.0 / std::sqrt(n));
    }
  }
}

TEST(Patterns, MismatchCount) {
  const auto ps = generate_patterns(PatternDistribution::rademacher(2), 64, 2);
  const StateVector s = ps.pattern(0);
  EXPECT_EQ(mismatch_count(s, ps.row(0)), 0);
  EXPECT_EQ(mismatch_count(s.negated(), ps.row(0)), 64);
  StateVector t = s;
  t.set(17, -t.value(17));
  EXPECT_EQ(mismatch_count(t, ps.row(0)), 1);
}

TEST(Patterns, BipolarRoundTrip) {
  const std::vector<int> v = {1, -1, -1, 1, 1, 1, -1};
  EXPECT_EQ(StateVector::from_bipolar(v).to_bipolar(), v);
  const std::vector<int> bad = {1, 0, -1};
  EXPECT_THROW(StateVector::from_bipolar(bad), std::invalid_argument);
}

TEST(Patterns, BinaryFileRoundTrip) {
  const auto ps = generate_patterns(PatternDistribution::biased(0.3, 11), 130, 17);
  std::stringstream buf;
  write_patterns(buf, ps);
  EXPECT_EQ(read_patterns(buf), ps);

  std::stringstream bad("NOTSQM");
  EXPECT_THROW(read_patterns(bad), std::runtime_error);

  std::stringstream full;
  write_patterns(full, ps);
  std::string bytes = full.str();
  bytes.resize(bytes.size() - 3);
  std::stringstream truncated(bytes);
  EXPECT_THROW(read_patterns(truncated), std::runtime_error);
}
