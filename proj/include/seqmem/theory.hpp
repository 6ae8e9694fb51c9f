#pragma once

#include <map>
#include <string>
#include <vector>

#include "seqmem/interaction.hpp"
#include "seqmem/rules.hpp"

namespace seqmem {

enum class CapacityKind { Transition, Sequence };

std::string to_string(CapacityKind k);
CapacityKind parse_capacity_kind(const std::string& s);

struct TheoryPrediction {
  std::string formula_id;
  std::map<std::string, double> inputs;
  double value = 0.0;
};

/// beta = e^2 / cosh 2.
double beta_constant();

double poly_densenet_capacity(int n, int d, CapacityKind kind);
double exp_densenet_capacity(int n, CapacityKind kind);

/// Variance prefactor of the polynomial MixedNet crosstalk.
double gamma_factor(int d_s, int d_a, double lambda);
double mixed_poly_capacity(int n, int d_s, int d_a, double lambda, CapacityKind kind);
double mixed_exp_capacity(int n, double lambda, CapacityKind kind);

/// Gaussian-theory capacity for any rule (GPI uses the plain rule's value).
double theory_capacity(const RuleConfig& cfg, int n, CapacityKind kind);

/// E[f(Xi)^k] with Xi the mean of N-1 Rademacher variables, by enumeration
/// over the binomial distribution.
double exact_term_moment(const InteractionFunction& f, int n, int k);

/// Leading-order variance of one crosstalk term: (2d-1)!!/N^d or beta^{-(N-1)}.
double crosstalk_variance_theory(const InteractionFunction& f, int n);
/// Excess kurtosis of the summed crosstalk over P-1 terms.
double crosstalk_kurtosis_theory(const InteractionFunction& f, int n, int p);

struct MixedCrosstalkTheory {
  double mean_minus = 0.0;  // E[C | branch = -1]
  double mean_plus = 0.0;   // E[C | branch = +1]
  double variance = 0.0;    // Var[C | branch], equal for both branches
  double variance_leading = 0.0;  // P {E f_S^2 + 2 lambda E f_S E f_A + lambda^2 E f_A^2}
};

/// Conditional crosstalk moments of the MixedNet, using exact finite-N term moments.
MixedCrosstalkTheory mixed_crosstalk_theory(const InteractionFunction& f_s,
                                            const InteractionFunction& f_a, double lambda,
                                            int n, int p);

struct BitflipEstimate {
  double probability = 0.0;
  /// False when (P-1) Var >= 1, outside the regime of the Gaussian estimate.
  bool in_regime = true;
};

BitflipEstimate bitflip_probability(const InteractionFunction& f, int n, int p);
BitflipEstimate mixed_bitflip_probability(const InteractionFunction& f_s,
                                          const InteractionFunction& f_a, double lambda, int n,
                                          int p);

/// Capacity at error tolerance c in (0,1) from the inverted Gaussian tail.
double finite_c_capacity(int n, double c, const InteractionFunction& f, CapacityKind kind);

double hopfield_hoeffding_bound(int n, int p);

struct MaxDegreeProfile {
  std::vector<double> log_capacity;  // index d-1, natural log of the transition capacity
  int argmax = 1;
};

MaxDegreeProfile max_degree_profile(int n);

}  // namespace seqmem
