#include <gtest/gtest.h>

#include <random>

#include "seqmem/numerics.hpp"
#include "seqmem/patterns.hpp"
#include "seqmem/rng.hpp"

using namespace seqmem;

TEST(Numerics, PseudoinverseIdentityAndRankDeficient) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
  EXPECT_TRUE(pseudoinverse_psd(id).isApprox(id, 1e-14));

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 2.0;
  const Eigen::MatrixXd pinv = pseudoinverse_psd(d);
  EXPECT_NEAR(pinv(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(pinv(1, 1), 0.0, 1e-15);
  EXPECT_NEAR(pinv(0, 1), 0.0, 1e-15);
}

TEST(Numerics, PseudoinverseMoorePenrose) {
  const Eigen::MatrixXd o = overlap_matrix(generate_patterns(PatternDistribution::rademacher(3), 100, 50));
  const Eigen::MatrixXd pinv = pseudoinverse_psd(o);
  EXPECT_LT((o * pinv * o - o).norm() / o.norm(), 1e-8);
  EXPECT_LT((pinv * o * pinv - pinv).norm() / pinv.norm(), 1e-8);
  // (O^+)^+ = O on a full-rank input.
  EXPECT_LT((pseudoinverse_psd(pinv) - o).norm() / o.norm(), 1e-8);
}

TEST(Numerics, PseudoinverseRejectsBadInput) {
  Eigen::MatrixXd nonsym(2, 2);
  nonsym << 1, 2, 0, 1;
  EXPECT_THROW(pseudoinverse_psd(nonsym), std::invalid_argument);
  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1, 0, 0, -1;
  EXPECT_THROW(pseudoinverse_psd(indefinite), std::invalid_argument);
}

TEST(Numerics, JacobiMatchesEigenSolver) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd a(12, 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) a(i, j) = nd(gen);
  a = (a + a.transpose()).eval();
  const auto ours = jacobi_eigen(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
  EXPECT_LT((ours.values - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::MatrixXd rec = ours.vectors * ours.values.asDiagonal() * ours.vectors.transpose();
  EXPECT_LT((rec - a).norm(), 1e-11);
}

TEST(Numerics, RademacherMoments) {
  CounterRng rng(1, 0);
  MomentAccumulator acc;
  for (int i = 0; i < 1000000; ++i) acc.add((rng() >> 63) ? 1.0 : -1.0);
  EXPECT_NEAR(acc.variance(), 1.0, 0.01);
  EXPECT_NEAR(acc.excess_kurtosis(), -2.0, 0.01);
}

TEST(Numerics, GaussianMoments) {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> nd;
  MomentAccumulator acc;
  for (int i = 0; i < 1000000; ++i) acc.add(nd(gen));
  EXPECT_NEAR(acc.excess_kurtosis(), 0.0, 0.03);
  EXPECT_NEAR(acc.variance(), 1.0, 0.01);
}

TEST(Numerics, ConstantStreamKurtosisIsAnError) {
  MomentAccumulator acc;
  for (int i = 0; i < 10; ++i) acc.add(3.0);
  EXPECT_DOUBLE_EQ(acc.variance(), 0.0);
  EXPECT_THROW(acc.excess_kurtosis(), DomainError);
  MomentAccumulator empty;
  EXPECT_THROW(empty.variance(), DomainError);
}

TEST(Numerics, MergeMatchesSequential) {
  std::mt19937_64 gen(3);
  std::exponential_distribution<double> ed(1.0);
  std::vector<double> xs(3001);
  for (auto& x : xs) x = ed(gen);
  MomentAccumulator all;
  for (double x : xs) all.add(x);
  MomentAccumulator a, b, c;
  for (std::size_t i = 0; i < xs.size(); ++i) (i < 1000 ? a : (i < 2200 ? b : c)).add(xs[i]);
  MomentAccumulator left = a;
  left.merge(b);
  left.merge(c);
  MomentAccumulator bc = b;
  bc.merge(c);
  MomentAccumulator right = a;
  right.merge(bc);
  for (const auto* m : {&left, &right}) {
    EXPECT_NEAR(m->mean(), all.mean(), 1e-12);
    EXPECT_NEAR(m->variance(), all.variance(), 1e-11);
    EXPECT_NEAR(m->excess_kurtosis(), all.excess_kurtosis(), 1e-9);
  }
  const auto mom = moments(xs);
  EXPECT_NEAR(mom.excess_kurtosis, all.excess_kurtosis(), 1e-12);
}

TEST(Numerics, GaussianTail) {
  EXPECT_DOUBLE_EQ(gaussian_tail(0.0), 0.5);
  EXPECT_NEAR(gaussian_tail(1.6449), 0.05, 1e-4);
  EXPECT_NEAR(gaussian_tail(1.6449), 0.04999521746834631, 1e-15);
  double prev = gaussian_tail(-5.0);
  for (int i = 1; i <= 1000; ++i) {
    const double h = gaussian_tail(-5.0 + 0.01 * i);
    EXPECT_LT(h, prev);
    prev = h;
  }
  // Leading asymptotic term overshoots by about 1/z.
  for (double z : {40.0, 60.0, 100.0, 400.0}) {
    const double approx = std::exp(-z / 2) / std::sqrt(2 * M_PI * z);
    const double rel = approx / gaussian_tail(std::sqrt(z)) - 1.0;
    EXPECT_GT(rel, 0.0);
    EXPECT_LT(rel, 1.0 / z);
    if (z >= 60.0) EXPECT_LT(rel, 0.02);
  }
}

TEST(Numerics, GaussianTailInverse) {
  for (double p : {0.5, 0.3, 0.05, 1e-4, 1e-10, 1e-100, 1e-300}) {
    EXPECT_NEAR(gaussian_tail(gaussian_tail_inv(p)) / p, 1.0, 1e-12) << p;
  }
  EXPECT_THROW(gaussian_tail_inv(0.0), std::domain_error);
  EXPECT_THROW(gaussian_tail_inv(0.6), std::domain_error);
}

TEST(Numerics, DoubleFactorial) {
  EXPECT_EQ(double_factorial(-1), 1);
  EXPECT_EQ(double_factorial(1), 1);
  EXPECT_EQ(double_factorial(5), 15);
  EXPECT_EQ(double_factorial(7), 105);
  EXPECT_THROW(double_factorial(4), std::invalid_argument);
  EXPECT_THROW(double_factorial(-3), std::invalid_argument);
  EXPECT_THROW(double_factorial(101), std::overflow_error);
  EXPECT_NEAR(log_double_factorial(7), std::log(105.0), 1e-12);
}

TEST(Numerics, NeumaierSum) {
  NeumaierSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  EXPECT_DOUBLE_EQ(s.value(), 2.0);
}
