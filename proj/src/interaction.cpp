#include "seqmem/interaction.hpp"

#include <cmath>
#include <stdexcept>

namespace seqmem {

double int_pow(double x, int d) {
  double r = 1.0;
  double b = x;
  while (d > 0) {
    if (d & 1) r *= b;
    b *= b;
    d >>= 1;
  }
  return r;
}

InteractionFunction InteractionFunction::polynomial(int degree) {
  if (degree < 1) throw std::invalid_argument("polynomial degree must be >= 1");
  if (degree == 1) return identity();
  return {Kind::Polynomial, degree};
}

InteractionFunction InteractionFunction::parse(const std::string& spec) {
  if (spec == "identity" || spec == "linear" || spec == "poly:1") return identity();
  if (spec == "exp" || spec == "exponential") return exponential();
  if (spec.rfind("poly:", 0) == 0) {
    std::size_t used = 0;
    int d = 0;
    try {
      d = std::stoi(spec.substr(5), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad polynomial degree in '" + spec + "'");
    }
    if (used != spec.size() - 5) throw std::invalid_argument("bad polynomial degree in '" + spec + "'");
    return polynomial(d);
  }
  throw std::invalid_argument("unknown interaction function '" + spec +
                              "' (expected identity, poly:<d> or exp)");
}

std::string InteractionFunction::name() const {
  switch (kind_) {
    case Kind::Identity: return "identity";
    case Kind::Polynomial: return "poly:" + std::to_string(degree_);
    case Kind::Exponential: return "exp";
  }
  return "?";
}

double InteractionFunction::operator()(double x, int n_neurons) const {
  switch (kind_) {
    case Kind::Identity: return x;
    case Kind::Polynomial: return int_pow(x, degree_);
    case Kind::Exponential: return std::exp(log_exponential(x, n_neurons));
  }
  return 0.0;
}

double InteractionFunction::excluded(int k, int n_neurons) const {
  switch (kind_) {
    case Kind::Identity: return static_cast<double>(k) / (n_neurons - 1);
    case Kind::Polynomial: return int_pow(static_cast<double>(k) / (n_neurons - 1), degree_);
    case Kind::Exponential: return std::exp(static_cast<double>(k - (n_neurons - 1)));
  }
  return 0.0;
}

double InteractionFunction::full(double d, int n_neurons) const {
  switch (kind_) {
    case Kind::Identity: return d / n_neurons;
    case Kind::Polynomial: return int_pow(d / n_neurons, degree_);
    case Kind::Exponential:
      return std::exp(static_cast<double>(n_neurons - 1) * (d - n_neurons) / n_neurons);
  }
  return 0.0;
}

}  // namespace seqmem
