#include "seqmem/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "seqmem/numerics.hpp"

namespace seqmem {
namespace {

void require_n(int n, int min_n) {
  if (n < min_n) {
    throw std::invalid_argument("network size N must be >= " + std::to_string(min_n));
  }
}

void require_lambda(double lambda) {
  if (!(lambda > 1.0)) throw std::invalid_argument("MixedNet theory needs lambda > 1");
}

double df(int k) { return static_cast<double>(double_factorial(k)); }

}  // namespace

std::string to_string(CapacityKind k) {
  return k == CapacityKind::Transition ? "transition" : "sequence";
}

CapacityKind parse_capacity_kind(const std::string& s) {
  if (s == "transition") return CapacityKind::Transition;
  if (s == "sequence") return CapacityKind::Sequence;
  throw std::invalid_argument("capacity kind must be 'transition' or 'sequence'");
}

double beta_constant() { return std::exp(2.0) / std::cosh(2.0); }

double poly_densenet_capacity(int n, int d, CapacityKind kind) {
  require_n(n, 3);
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  const double log_pt = d * std::log(static_cast<double>(n)) - std::log(2.0) -
                        log_double_factorial(2 * d - 1) - std::log(std::log(static_cast<double>(n)));
  const double pt = std::exp(log_pt);
  return kind == CapacityKind::Transition ? pt : pt / (d + 1);
}

double exp_densenet_capacity(int n, CapacityKind kind) {
  require_n(n, 3);
  const double lb = std::log(beta_constant());
  const double num = std::exp((n - 1) * lb);
  if (kind == CapacityKind::Transition) return num / (2.0 * std::log(static_cast<double>(n)));
  return num / (2.0 * n * lb);
}

double gamma_factor(int d_s, int d_a, double lambda) {
  if (d_s < 1 || d_a < 1) throw std::invalid_argument("degrees must be >= 1");
  if (d_s < d_a) return df(2 * d_s - 1);
  if (d_s > d_a) return lambda * lambda * df(2 * d_a - 1);
  const int d = d_s;
  double g = (lambda * lambda + 1.0) * df(2 * d - 1);
  if (d % 2 == 0) {
    const double h = df(d - 1);
    g += 2.0 * lambda * h * h;
  }
  return g;
}

double mixed_poly_capacity(int n, int d_s, int d_a, double lambda, CapacityKind kind) {
  require_n(n, 3);
  require_lambda(lambda);
  const int dmin = std::min(d_s, d_a);
  const double pt = (lambda - 1.0) * (lambda - 1.0) / (2.0 * gamma_factor(d_s, d_a, lambda)) *
                    std::pow(static_cast<double>(n), dmin) / std::log(static_cast<double>(n));
  return kind == CapacityKind::Transition ? pt : pt / (dmin + 1);
}

double mixed_exp_capacity(int n, double lambda, CapacityKind kind) {
  require_lambda(lambda);
  const double factor = (lambda - 1.0) * (lambda - 1.0) / (lambda * lambda + 1.0);
  return factor * exp_densenet_capacity(n, kind);
}

double theory_capacity(const RuleConfig& cfg, int n, CapacityKind kind) {
  const InteractionFunction& f = cfg.f;
  switch (cfg.rule) {
    case RuleKind::SeqNet:
    case RuleKind::Hopfield: return poly_densenet_capacity(n, 1, kind);
    case RuleKind::DenseNet:
    case RuleKind::MHN:
    case RuleKind::GPI:
      return f.is_exponential() ? exp_densenet_capacity(n, kind)
                                : poly_densenet_capacity(n, f.degree(), kind);
    case RuleKind::MixedNet:
      if (f.is_exponential() && cfg.f_a.is_exponential()) {
        return mixed_exp_capacity(n, cfg.lambda, kind);
      }
      if (f.is_exponential() || cfg.f_a.is_exponential()) {
        throw std::invalid_argument("no capacity formula for mixed polynomial/exponential MixedNet");
      }
      return mixed_poly_capacity(n, f.degree(), cfg.f_a.degree(), cfg.lambda, kind);
  }
  return 0.0;
}

double exact_term_moment(const InteractionFunction& f, int n, int k) {
  require_n(n, 2);
  if (k < 1) throw std::invalid_argument("moment order must be >= 1");
  const int m = n - 1;
  NeumaierSum acc;
  const double log_norm = m * std::log(2.0);
  for (int a = 0; a <= m; ++a) {
    const double log_w =
        std::lgamma(m + 1.0) - std::lgamma(a + 1.0) - std::lgamma(m - a + 1.0) - log_norm;
    const int sum = 2 * a - m;
    acc.add(std::exp(log_w) * int_pow(f.excluded(sum, n), k));
  }
  return acc.value();
}

double crosstalk_variance_theory(const InteractionFunction& f, int n) {
  require_n(n, 2);
  if (f.is_exponential()) return std::exp(-(n - 1) * std::log(beta_constant()));
  const int d = f.degree();
  return std::exp(log_double_factorial(2 * d - 1) - d * std::log(static_cast<double>(n)));
}

double crosstalk_kurtosis_theory(const InteractionFunction& f, int n, int p) {
  require_n(n, 2);
  if (p < 2) throw std::invalid_argument("kurtosis needs P >= 2");
  double bracket = 0.0;
  if (f.is_exponential()) {
    const double ratio = std::cosh(4.0) / (std::cosh(2.0) * std::cosh(2.0));
    bracket = std::exp((n - 1) * std::log(ratio)) - 3.0;
  } else {
    const int d = f.degree();
    if (4 * d - 1 <= 33) {
      // Exact while (4d-1)!! fits in 64 bits.
      const double b = df(2 * d - 1);
      bracket = df(4 * d - 1) / (b * b) - 3.0;
    } else {
      bracket = std::exp(log_double_factorial(4 * d - 1) - 2.0 * log_double_factorial(2 * d - 1)) - 3.0;
    }
  }
  return bracket / (p - 1);
}

MixedCrosstalkTheory mixed_crosstalk_theory(const InteractionFunction& f_s,
                                            const InteractionFunction& f_a, double lambda, int n,
                                            int p) {
  require_n(n, 2);
  if (p < 3) throw std::invalid_argument("MixedNet crosstalk needs P >= 3");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  const double es = exact_term_moment(f_s, n, 1);
  const double ea = exact_term_moment(f_a, n, 1);
  const double es2 = exact_term_moment(f_s, n, 2);
  const double ea2 = exact_term_moment(f_a, n, 2);
  const double bracket = es2 + 2.0 * lambda * es * ea + lambda * lambda * ea2;
  MixedCrosstalkTheory out;
  out.mean_plus = (1.0 + lambda * ea) + es;
  out.mean_minus = -(1.0 + lambda * ea) + es;
  out.variance = (p - 1) * bracket - es * es - lambda * lambda * ea * ea;
  out.variance_leading = p * bracket;
  return out;
}

BitflipEstimate bitflip_probability(const InteractionFunction& f, int n, int p) {
  if (p < 2) throw std::invalid_argument("bitflip probability needs P >= 2");
  const double v = (p - 1) * crosstalk_variance_theory(f, n);
  return {gaussian_tail(1.0 / std::sqrt(v)), v < 1.0};
}

BitflipEstimate mixed_bitflip_probability(const InteractionFunction& f_s,
                                          const InteractionFunction& f_a, double lambda, int n,
                                          int p) {
  const auto th = mixed_crosstalk_theory(f_s, f_a, lambda, n, p);
  const double sd = std::sqrt(th.variance);
  const double prob = 0.5 * gaussian_tail((lambda + th.mean_minus) / sd) +
                      0.5 * gaussian_tail((lambda + th.mean_plus) / sd);
  return {prob, lambda + th.mean_minus > 0.0 && th.variance < 1.0};
}

double finite_c_capacity(int n, double c, const InteractionFunction& f, CapacityKind kind) {
  require_n(n, 2);
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("tolerance c must lie in (0, 1)");
  const double var = crosstalk_variance_theory(f, n);
  auto rhs = [&](double p) {
    const double x = gaussian_tail_inv(c / (n * (kind == CapacityKind::Sequence ? p : 1.0)));
    return 1.0 / (var * x * x);
  };
  const double pt = 1.0 + rhs(1.0);
  if (kind == CapacityKind::Transition) return pt;

  // g(P) = P - 1 - rhs(P) is increasing; the root lies in [1, pt].
  double lo = 1.0;
  double hi = pt;
  for (int it = 0; it < 1000; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (mid - 1.0 - rhs(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo <= 1e-13 * hi) {
      const double p = 0.5 * (lo + hi);
      if (std::fabs(p - 1.0 - rhs(p)) > 1e-8 * p) break;
      return p;
    }
  }
  throw std::runtime_error("finite-c sequence capacity did not converge");
}

double hopfield_hoeffding_bound(int n, int p) {
  require_n(n, 2);
  if (p < 2) throw std::invalid_argument("Hoeffding bound needs P >= 2");
  return std::exp(-(n - 1.0) / (2.0 * (p - 1.0)));
}

MaxDegreeProfile max_degree_profile(int n) {
  require_n(n, 5);
  MaxDegreeProfile out;
  out.log_capacity.resize(static_cast<std::size_t>(n));
  const double ln = std::log(static_cast<double>(n));
  for (int d = 1; d <= n; ++d) {
    out.log_capacity[d - 1] = d * ln - std::log(2.0) - log_double_factorial(2 * d - 1) - std::log(ln);
  }
  int best = 1;
  for (int d = 2; d <= n; ++d) {
    if (out.log_capacity[d - 1] > out.log_capacity[best - 1]) best = d;
  }
  out.argmax = best;
  return out;
}

}  // namespace seqmem
