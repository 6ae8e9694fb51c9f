#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "seqmem/interaction.hpp"
#include "seqmem/patterns.hpp"

namespace seqmem {

enum class RuleKind { SeqNet, DenseNet, Hopfield, MHN, MixedNet, GPI };

/// SelfExcluded: m_i = sum_{j != i} xi_j s_j / (N-1), one value per neuron.
/// FullDivisor: m = sum_j xi_j s_j / N, shared by all neurons.
enum class OverlapConvention { SelfExcluded, FullDivisor };

std::string to_string(RuleKind k);
RuleKind parse_rule_kind(const std::string& name);

/// Low-pass filter over the last tau states, S_bar = sum_rho w(rho) S(t - rho).
class TemporalKernel {
 public:
  enum class Kind { UniformStep, ExponentialDecay, Custom };

  static TemporalKernel uniform() { return TemporalKernel(Kind::UniformStep, 0.0, {}); }
  static TemporalKernel exponential_decay(double rate);
  static TemporalKernel custom(std::vector<double> weights);

  Kind kind() const { return kind_; }
  double rate() const { return rate_; }
  std::string name() const;

  /// Weights for rho = 0 .. L-1 with L = min(available, tau), normalised to
  /// sum to one over the states actually available.
  std::vector<double> weights(int tau, int available) const;

 private:
  TemporalKernel(Kind k, double rate, std::vector<double> w)
      : kind_(k), rate_(rate), custom_(std::move(w)) {}

  Kind kind_ = Kind::UniformStep;
  double rate_ = 0.0;
  std::vector<double> custom_;
};

struct RuleConfig {
  RuleKind rule = RuleKind::DenseNet;
  /// Interaction function; the symmetric one (f_S) for MixedNet.
  InteractionFunction f;
  /// Asymmetric interaction function f_A, MixedNet only.
  InteractionFunction f_a;
  double lambda = 2.5;
  int tau = 1;
  TemporalKernel kernel = TemporalKernel::uniform();
  /// Relative eigenvalue cut for the GPI pseudoinverse.
  double tol = 1e-10;
  OverlapConvention overlap = OverlapConvention::SelfExcluded;

  static RuleConfig seqnet();
  static RuleConfig densenet(InteractionFunction f);
  static RuleConfig hopfield();
  static RuleConfig mhn(InteractionFunction f);
  static RuleConfig mixednet(InteractionFunction f_s, InteractionFunction f_a, double lambda,
                             int tau, TemporalKernel kernel = TemporalKernel::uniform());
  static RuleConfig gpi(InteractionFunction f, double tol = 1e-10);

  /// Throws std::invalid_argument on lambda <= 0, tau < 1, tol outside (0, 1e-6].
  void validate() const;
  std::string describe() const;
  /// Whether the rule maps xi^mu to xi^{mu+1} (as opposed to a fixed point).
  bool is_sequential() const { return rule != RuleKind::Hopfield && rule != RuleKind::MHN; }
};

/// The last `capacity` network states, most recent first.
class StateHistory {
 public:
  explicit StateHistory(int capacity);
  void push(StateVector s);
  int size() const { return static_cast<int>(states_.size()); }
  int capacity() const { return capacity_; }
  const StateVector& at(int rho) const;
  const StateVector& current() const { return at(0); }

 private:
  int capacity_;
  std::vector<StateVector> states_;  // ring buffer
  int head_ = -1;
};

/// sgn with sgn(0) = +1.
StateVector sign_state(std::span<const double> field);

/// Exact integer overlaps D_mu = sum_j xi_j^mu s_j for every pattern.
std::vector<int> agreements(const PatternSet& ps, const StateVector& s);
/// m^mu = D_mu / N for every pattern.
Eigen::VectorXd overlaps_full(const PatternSet& ps, const StateVector& s);

StateVector seqnet_update(const StateVector& s, const PatternSet& ps);
StateVector densenet_update(const StateVector& s, const PatternSet& ps,
                            const InteractionFunction& f,
                            OverlapConvention ov = OverlapConvention::SelfExcluded);
StateVector hopfield_update(const StateVector& s, const PatternSet& ps,
                            const InteractionFunction& f,
                            OverlapConvention ov = OverlapConvention::SelfExcluded);
StateVector mixednet_update(const StateHistory& history, const PatternSet& ps,
                            const RuleConfig& cfg);
StateVector gpi_update(const StateVector& s, const PatternSet& ps, const InteractionFunction& f,
                       const Eigen::MatrixXd& o_pinv);
/// Second half of the GPI rule: sgn(sum_mu xi^{mu+1} f(u_mu)) for decorrelated overlaps u.
StateVector gpi_update_from_coefficients(const PatternSet& ps, const InteractionFunction& f,
                                         const Eigen::VectorXd& u);

/// Visible-to-hidden weights W (N x P) and hidden-to-visible weights M (P x N).
/// W is kept as signs with the common factor 1/N applied on read-out, so the
/// hidden pre-activation is exactly D_mu / N.
struct TwoLayerWeights {
  int n_neurons = 0;
  int n_patterns = 0;
  Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic> w_sign;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m;

  Eigen::MatrixXd w() const { return w_sign.cast<double>() / static_cast<double>(n_neurons); }
};

/// DenseNet: M_mu = xi^{mu+1}. MixedNet: M_mu = xi^mu + lambda xi^{mu+1}.
TwoLayerWeights build_two_layer(const PatternSet& ps, const RuleConfig& cfg);
StateVector two_layer_update(const StateVector& v, const TwoLayerWeights& weights,
                             const InteractionFunction& f);

struct Trajectory {
  std::vector<StateVector> states;
  /// (steps + 1) x P matrix of m^mu(t) = D_mu / N; empty when not recorded.
  Eigen::MatrixXd overlaps;
};

/// Applies the configured rule `steps` times starting from `initial`.
Trajectory run_sequence(const StateVector& initial, const PatternSet& ps, const RuleConfig& cfg,
                        int steps, bool record_overlaps = true);

/// CSV with header "t,mu,m", one row per (t, mu), mu 0-based.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// States in the packed pattern-file format, one row per time step.
void write_trajectory_states(const std::filesystem::path& path, const Trajectory& traj);

}  // namespace seqmem
