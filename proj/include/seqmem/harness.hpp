#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "seqmem/patterns.hpp"
#include "seqmem/rules.hpp"
#include "seqmem/theory.hpp"

namespace seqmem {

/// Number of worker threads to use; 0 means std::thread::hardware_concurrency().
int resolve_threads(int requested);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. If `stop` is given,
/// workers stop claiming new indices once it returns true.
void parallel_for(int n, int threads, const std::function<void(int)>& fn,
                  const std::function<bool()>& stop = {});

struct CapacityProtocolConfig {
  int n_sequences = 100;
  int n_repeats = 20;
  double decay = 0.99;
  double p0_multiplier = 2.0;
  int max_rounds = 5000;
  int threads = 0;
  /// Starting length; 0 seeds it from the Gaussian theory.
  int p0_override = 0;

  void validate() const;
};

struct CapacityEstimate {
  std::string rule;
  CapacityKind kind = CapacityKind::Transition;
  int n_neurons = 0;
  std::uint64_t seed = 0;
  std::string distribution = "rademacher";
  double theory = 0.0;

  std::vector<int> capacities;      // one per repeat
  std::vector<int> starting_p;      // P0 actually used (after doublings)
  std::vector<int> rounds;          // rounds until the repeat settled
  std::vector<bool> floor_reached;  // shrank to P = 2 without an error-free round
  double mean = 0.0;
  double stddev = 0.0;
};

/// Single-transition check: the update applied once to xi^0 must give xi^1
/// (xi^0 itself for the autoassociative rules).
bool transition_correct(const PatternSet& ps, const RuleConfig& cfg);
/// Sequence check: every transition xi^mu -> xi^{mu+1} is exact, which is
/// the same event as a serial run from xi^0 reproducing the whole sequence.
bool sequence_correct(const PatternSet& ps, const RuleConfig& cfg);

CapacityEstimate estimate_capacity(const RuleConfig& cfg, int n, CapacityKind kind,
                                   const CapacityProtocolConfig& proto, std::uint64_t seed,
                                   const PatternDistribution& dist = PatternDistribution{});

inline CapacityEstimate estimate_transition_capacity(const RuleConfig& cfg, int n,
                                                     const CapacityProtocolConfig& proto,
                                                     std::uint64_t seed) {
  return estimate_capacity(cfg, n, CapacityKind::Transition, proto, seed);
}
inline CapacityEstimate estimate_sequence_capacity(const RuleConfig& cfg, int n,
                                                   const CapacityProtocolConfig& proto,
                                                   std::uint64_t seed) {
  return estimate_capacity(cfg, n, CapacityKind::Sequence, proto, seed);
}

struct Histogram {
  std::vector<double> edges;          // bins + 1 edges
  std::vector<std::int64_t> counts;   // bins
  /// Local maxima of the smoothed histogram that stand out from the valley between them.
  int modes(double valley_ratio = 0.5) const;
};

Histogram make_histogram(const std::vector<double>& xs, int bins);

struct BranchStats {
  std::int64_t count = 0;
  double weight = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

struct CrosstalkStats {
  std::string rule;
  int n_neurons = 0;
  int n_patterns = 0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;

  double mean = 0.0;
  double variance = 0.0;
  double excess_kurtosis = 0.0;
  /// Var(C) / (P - 1) and its standard error.
  double term_variance = 0.0;
  double term_variance_se = 0.0;

  double theory_term_variance = 0.0;        // leading-order formula
  double theory_term_variance_exact = 0.0;  // E[f(Xi)^2] at this N
  double theory_kurtosis = 0.0;

  Histogram histogram;

  bool mixed = false;
  BranchStats minus;
  BranchStats plus;
  MixedCrosstalkTheory mixed_theory;
  double bimodality_coefficient = 0.0;
  int histogram_modes = 0;
};

/// Draws n_samples independent sequences and evaluates the crosstalk on
/// neuron 0 for the transition xi^0 -> xi^1. For MixedNet the branch label is
/// xi_0^1 xi_0^0.
CrosstalkStats sample_crosstalk(const RuleConfig& cfg, int n, int p, std::int64_t n_samples,
                                std::uint64_t seed, int bins = 100, int threads = 0);

struct BiasSweepRow {
  std::string rule;
  double epsilon = 0.0;
  CapacityEstimate estimate;
};

std::vector<BiasSweepRow> bias_sweep(const std::vector<RuleConfig>& rules, int n,
                                     const std::vector<double>& epsilons,
                                     const CapacityProtocolConfig& proto, std::uint64_t seed,
                                     CapacityKind kind = CapacityKind::Transition);

struct DwellSegment {
  int pattern = 0;
  int start = 0;
  int length = 0;
};

struct DwellReport {
  std::vector<DwellSegment> segments;
  /// Ends below threshold, or a sub-threshold gap outlasts every aligned segment.
  bool lost = false;
  bool order_correct = false;
  /// All segments except the first and last (which the run truncates) share one length.
  bool dwell_uniform = false;
  int patterns_reached = 0;

  /// Patterns with at least one interior segment of exactly `length` steps.
  int patterns_with_dwell(int length) const;
};

DwellReport dwell_analysis(const Trajectory& traj, double threshold = 0.9);

struct RecallReport {
  int steps = 0;
  int exact_steps = 0;        // S(t) == xi^t
  double accuracy = 0.0;      // exact_steps / steps
  std::vector<double> overlap_with_target;  // m(S(t), xi^t), t = 0..steps
  bool repeated_state = false;
  int first_repeat_t = -1;    // earliest t with S(t) equal to an earlier state
  int repeat_of = -1;
  std::vector<std::pair<int, StateVector>> dumps;
};

/// Serial recall from xi^0 for `steps` steps (all P-1 transitions by default).
/// Rules whose next state depends only on the current state are followed
/// into their cycle without recomputation once a state repeats.
RecallReport run_recall(const PatternSet& ps, const RuleConfig& cfg, int steps = -1,
                        const std::vector<int>& dump_times = {});

}  // namespace seqmem
