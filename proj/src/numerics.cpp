#include "seqmem/numerics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace seqmem {

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& input, int max_sweeps) {
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw std::invalid_argument("eigensolver needs a square matrix");
  const double scale = std::max(1.0, input.cwiseAbs().maxCoeff());
  if ((input - input.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("eigensolver needs a symmetric matrix");
  }

  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double eps = std::numeric_limits<double>::epsilon();
  const double total = std::max(a.norm(), std::numeric_limits<double>::min());

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= eps * total) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Skip rotations too small to change the diagonal after the first sweeps.
        if (sweep > 3 && std::fabs(apq) <= eps * 1e-2 * std::sqrt(std::fabs(a(p, p) * a(q, q)))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == max_sweeps) throw std::runtime_error("Jacobi eigensolver did not converge");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

Eigen::MatrixXd pseudoinverse_psd(const Eigen::MatrixXd& o, double tol_rel) {
  if (!(tol_rel > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (o.rows() == 0) return o;
  const SymmetricEigen eig = jacobi_eigen(o);
  const double lmax = eig.values.maxCoeff();
  if (eig.values.minCoeff() < -1e-10 * std::max(o.norm(), 1e-300)) {
    throw std::invalid_argument("matrix is not positive semi-definite");
  }
  const Eigen::Index n = o.rows();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (lmax > 0.0 && eig.values(k) > tol_rel * lmax) inv(k) = 1.0 / eig.values(k);
  }
  Eigen::MatrixXd out = eig.vectors * inv.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

void MomentAccumulator::add(double x) {
  const double n1 = static_cast<double>(n_);
  ++n_;
  const double n = static_cast<double>(n_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (n * n - 3 * n + 3) + 6 * delta_n2 * m2_ - 4 * delta_n * m3_;
  m3_ += term1 * delta_n * (n - 2) - 3 * delta_n * m2_;
  m2_ += term1;
}

void MomentAccumulator::merge(const MomentAccumulator& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double delta = o.mean_ - mean_;
  const double d2 = delta * delta;
  const double d3 = d2 * delta;
  const double d4 = d2 * d2;

  const double m2 = m2_ + o.m2_ + d2 * na * nb / n;
  const double m3 = m3_ + o.m3_ + d3 * na * nb * (na - nb) / (n * n) +
                    3.0 * delta * (na * o.m2_ - nb * m2_) / n;
  const double m4 = m4_ + o.m4_ + d4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                    6.0 * d2 * (na * na * o.m2_ + nb * nb * m2_) / (n * n) +
                    4.0 * delta * (na * o.m3_ - nb * m3_) / n;
  mean_ = (na * mean_ + nb * o.mean_) / n;
  m2_ = m2;
  m3_ = m3;
  m4_ = m4;
  n_ += o.n_;
}

double MomentAccumulator::variance() const {
  if (n_ < 2) throw DomainError("variance needs at least two samples");
  return m2_ / static_cast<double>(n_ - 1);
}

double MomentAccumulator::excess_kurtosis() const {
  if (n_ < 4) throw DomainError("kurtosis needs at least four samples");
  if (!(m2_ > 0.0)) throw DomainError("kurtosis undefined for zero variance");
  const double n = static_cast<double>(n_);
  return n * m4_ / (m2_ * m2_) - 3.0;
}

double MomentAccumulator::skewness() const {
  if (n_ < 3) throw DomainError("skewness needs at least three samples");
  if (!(m2_ > 0.0)) throw DomainError("skewness undefined for zero variance");
  const double n = static_cast<double>(n_);
  return std::sqrt(n) * m3_ / std::pow(m2_, 1.5);
}

Moments moments(std::span<const double> xs) {
  MomentAccumulator acc;
  for (double x : xs) acc.add(x);
  return {acc.mean(), acc.variance(), acc.excess_kurtosis()};
}

double gaussian_tail_inv(double p) {
  if (!(p > 0.0 && p <= 0.5)) throw std::domain_error("gaussian_tail_inv needs p in (0, 0.5]");
  if (p == 0.5) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (gaussian_tail(hi) > p) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0) throw std::domain_error("gaussian_tail_inv: p below representable tail");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (gaussian_tail(mid) > p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Pick the endpoint whose tail value is closer to p.
  return std::fabs(gaussian_tail(lo) - p) < std::fabs(gaussian_tail(hi) - p) ? lo : hi;
}

std::int64_t double_factorial(int k) {
  if (k < -1 || (k % 2 == 0)) {
    throw std::invalid_argument("double_factorial needs an odd k >= -1, got " + std::to_string(k));
  }
  std::int64_t r = 1;
  for (int j = k; j > 1; j -= 2) {
    if (r > std::numeric_limits<std::int64_t>::max() / j) {
      throw std::overflow_error("double_factorial overflows 64 bits");
    }
    r *= j;
  }
  return r;
}

double log_double_factorial(int k) {
  if (k < -1 || (k % 2 == 0)) {
    throw std::invalid_argument("log_double_factorial needs an odd k >= -1");
  }
  // (2m-1)!! = (2m)! / (2^m m!)
  const int m = (k + 1) / 2;
  return std::lgamma(2.0 * m + 1.0) - m * std::log(2.0) - std::lgamma(m + 1.0);
}

}  // namespace seqmem
