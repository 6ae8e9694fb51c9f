#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

namespace seqmem {

/// Raised when a statistic is undefined for the data seen (e.g. kurtosis of a constant stream).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Compensated (Neumaier) summation.
inline void neumaier_add(double& sum, double& comp, double x) {
  const double t = sum + x;
  if (std::fabs(sum) >= std::fabs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
}

struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) { neumaier_add(sum, comp, x); }
  double value() const { return sum + comp; }
};

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
  int sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, int max_sweeps = 100);

/// Moore-Penrose pseudoinverse of a symmetric PSD matrix. Eigenvalues at or
/// below tol_rel * lambda_max are treated as zero.
Eigen::MatrixXd pseudoinverse_psd(const Eigen::MatrixXd& o, double tol_rel = 1e-10);

/// Streaming moments up to fourth order (pairwise-mergeable update).
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);

  std::int64_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance.
  double variance() const;
  /// m4 / m2^2 - 3 with population central moments.
  double excess_kurtosis() const;
  /// m3 / m2^{3/2} with population central moments.
  double skewness() const;
  double m2() const { return n_ > 0 ? m2_ / static_cast<double>(n_) : 0.0; }
  double m4() const { return n_ > 0 ? m4_ / static_cast<double>(n_) : 0.0; }

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double excess_kurtosis = 0.0;
};

Moments moments(std::span<const double> xs);

/// Upper tail of the standard normal, H(x) = erfc(x / sqrt 2) / 2.
inline double gaussian_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// Inverse of gaussian_tail for p in (0, 0.5], by bisection.
double gaussian_tail_inv(double p);

/// k!! for odd k >= -1. Throws on overflow of 64-bit integers.
std::int64_t double_factorial(int k);
/// log(k!!) for odd k >= -1, usable far beyond the integer range.
double log_double_factorial(int k);

}  // namespace seqmem
