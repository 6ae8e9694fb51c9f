#pragma once

#include <string>

namespace seqmem {

/// Separation function f applied to overlaps: identity, x^d, or
/// exp((N-1)(x-1)). All variants satisfy f(1) = 1.
class InteractionFunction {
 public:
  enum class Kind { Identity, Polynomial, Exponential };

  InteractionFunction() = default;

  static InteractionFunction identity() { return {Kind::Identity, 1}; }
  static InteractionFunction polynomial(int degree);
  static InteractionFunction exponential() { return {Kind::Exponential, 0}; }
  /// Accepts "identity", "linear", "poly:<d>", "exp".
  static InteractionFunction parse(const std::string& spec);

  Kind kind() const { return kind_; }
  /// Polynomial degree; 1 for identity, 0 for exponential.
  int degree() const { return degree_; }
  bool is_exponential() const { return kind_ == Kind::Exponential; }
  std::string name() const;

  /// f(x) for a network of n_neurons (only the exponential needs N).
  double operator()(double x, int n_neurons) const;
  /// log f(x) for the exponential, i.e. (N-1)(x-1).
  double log_exponential(double x, int n_neurons) const {
    return static_cast<double>(n_neurons - 1) * (x - 1.0);
  }

  /// f(k / (N-1)) where k = sum_{j != i} xi_j s_j. The exponential is
  /// evaluated as exp(k - (N-1)) = exp(-2h) with h the mismatch count.
  double excluded(int k, int n_neurons) const;
  /// f(D / N) where D = sum_j xi_j s_j (a kernel-weighted mean for MixedNet).
  double full(double d, int n_neurons) const;

  bool operator==(const InteractionFunction&) const = default;

 private:
  InteractionFunction(Kind k, int d) : kind_(k), degree_(d) {}

  Kind kind_ = Kind::Identity;
  int degree_ = 1;
};

/// x^d by repeated squaring.
double int_pow(double x, int d);

}  // namespace seqmem
