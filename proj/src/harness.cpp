#include "seqmem/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "seqmem/numerics.hpp"

namespace seqmem {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

RowMatrix pattern_matrix(const PatternSet& ps, int shift) {
  RowMatrix x(ps.n_patterns(), ps.n_neurons());
  for (int mu = 0; mu < ps.n_patterns(); ++mu) {
    const auto s = ps.signs(ps.wrap(mu + shift));
    for (int j = 0; j < ps.n_neurons(); ++j) x(mu, j) = s[j];
  }
  return x;
}

Eigen::MatrixXi gram(const PatternSet& ps) {
  const int p = ps.n_patterns();
  Eigen::MatrixXi d(p, p);
  for (int mu = 0; mu < p; ++mu) {
    d(mu, mu) = ps.n_neurons();
    for (int nu = mu + 1; nu < p; ++nu) {
      d(mu, nu) = d(nu, mu) = agreement(ps.row(mu), ps.row(nu), ps.n_neurons());
    }
  }
  return d;
}

// u = (X^T)^+ s, which equals O^+ m(s) for O = X X^T / N and m = X s / N.
Eigen::VectorXd gpi_coefficients_lsq(const PatternSet& ps, const StateVector& s, double tol) {
  const int n = ps.n_neurons();
  const int p = ps.n_patterns();
  Eigen::MatrixXd xt(n, p);
  for (int mu = 0; mu < p; ++mu) {
    const auto sg = ps.signs(mu);
    for (int j = 0; j < n; ++j) xt(j, mu) = sg[j];
  }
  Eigen::VectorXd rhs(n);
  for (int j = 0; j < n; ++j) rhs(j) = s.value(j);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  // Singular values of X^T scale as the square roots of the eigenvalues of O.
  cod.setThreshold(std::sqrt(tol));
  cod.compute(xt);
  return cod.solve(rhs);
}

struct FieldTerm {
  InteractionFunction f;
  int out_shift;
  double weight;
};

std::vector<FieldTerm> field_terms(const RuleConfig& cfg) {
  switch (cfg.rule) {
    case RuleKind::SeqNet: return {{InteractionFunction::identity(), 1, 1.0}};
    case RuleKind::DenseNet: return {{cfg.f, 1, 1.0}};
    case RuleKind::Hopfield: return {{InteractionFunction::identity(), 0, 1.0}};
    case RuleKind::MHN: return {{cfg.f, 0, 1.0}};
    case RuleKind::MixedNet:
      if (cfg.tau != 1) {
        throw std::invalid_argument(
            "sequence check from exact patterns needs a memoryless rule (MixedNet with tau = 1)");
      }
      return {{cfg.f, 0, 1.0}, {cfg.f_a, 1, cfg.lambda}};
    case RuleKind::GPI: return {{cfg.f, 1, 1.0}};
  }
  return {};
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn,
                  const std::function<bool()>& stop) {
  threads = std::min(resolve_threads(threads), std::max(n, 1));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) {
      if (stop && stop()) return;
      fn(i);
    }
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        if (stop && stop()) return;
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(n);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void CapacityProtocolConfig::validate() const {
  if (n_sequences < 1) throw std::invalid_argument("n_sequences must be >= 1");
  if (n_repeats < 1) throw std::invalid_argument("n_repeats must be >= 1");
  if (!(decay > 0.0 && decay < 1.0)) throw std::invalid_argument("decay must lie in (0, 1)");
  if (!(p0_multiplier > 0.0)) throw std::invalid_argument("p0_multiplier must be > 0");
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  if (p0_override < 0) throw std::invalid_argument("p0_override must be >= 0");
}

bool transition_correct(const PatternSet& ps, const RuleConfig& cfg) {
  const StateVector s = ps.pattern(0);
  const auto target = ps.row(cfg.is_sequential() ? 1 : 0);
  StateVector next;
  switch (cfg.rule) {
    case RuleKind::SeqNet:
      next = densenet_update(s, ps, InteractionFunction::identity(), cfg.overlap);
      break;
    case RuleKind::DenseNet: next = densenet_update(s, ps, cfg.f, cfg.overlap); break;
    case RuleKind::Hopfield:
      next = hopfield_update(s, ps, InteractionFunction::identity(), cfg.overlap);
      break;
    case RuleKind::MHN: next = hopfield_update(s, ps, cfg.f, cfg.overlap); break;
    case RuleKind::MixedNet: {
      StateHistory h(cfg.tau);
      h.push(s);
      next = mixednet_update(h, ps, cfg);
      break;
    }
    case RuleKind::GPI:
      next = gpi_update_from_coefficients(ps, cfg.f, gpi_coefficients_lsq(ps, s, cfg.tol));
      break;
  }
  return mismatch_count(next, target) == 0;
}

bool sequence_correct(const PatternSet& ps, const RuleConfig& cfg) {
  const auto terms = field_terms(cfg);
  const int n = ps.n_neurons();
  const int p = ps.n_patterns();
  const bool excluded = cfg.rule != RuleKind::GPI && cfg.overlap == OverlapConvention::SelfExcluded;

  const Eigen::MatrixXi d = gram(ps);
  const RowMatrix x = pattern_matrix(ps, 0);
  const RowMatrix target = cfg.is_sequential() ? pattern_matrix(ps, 1) : x;

  std::vector<RowMatrix> outs;
  std::vector<RowMatrix> ys;
  for (const auto& t : terms) {
    outs.push_back(t.out_shift == 0 ? x : pattern_matrix(ps, t.out_shift));
    if (excluded) ys.push_back(outs.back().cwiseProduct(x));
  }

  Eigen::MatrixXd u;  // GPI decorrelated overlaps, column nu for start pattern nu
  if (cfg.rule == RuleKind::GPI) {
    const Eigen::MatrixXd o = d.cast<double>() / n;
    u = pseudoinverse_psd(o, cfg.tol) * o;
  }

  constexpr int kBlock = 64;
  for (int c0 = 0; c0 < p; c0 += kBlock) {
    const int bs = std::min(kBlock, p - c0);
    Eigen::MatrixXd field = Eigen::MatrixXd::Zero(n, bs);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const auto& t = terms[k];
      if (excluded) {
        Eigen::MatrixXd a(p, bs);
        Eigen::MatrixXd b(p, bs);
        for (int c = 0; c < bs; ++c) {
          for (int mu = 0; mu < p; ++mu) {
            const int dm = d(mu, c0 + c);
            const double fp = t.f.excluded(dm - 1, n);
            const double fm = t.f.excluded(dm + 1, n);
            a(mu, c) = 0.5 * (fp + fm);
            b(mu, c) = 0.5 * (fp - fm);
          }
        }
        Eigen::MatrixXd yb = ys[k].transpose() * b;
        yb.array() *= x.middleRows(c0, bs).transpose().array();
        field.noalias() += t.weight * (outs[k].transpose() * a);
        field += t.weight * yb;
      } else {
        Eigen::MatrixXd h(p, bs);
        for (int c = 0; c < bs; ++c) {
          if (cfg.rule == RuleKind::GPI) {
            if (t.f.is_exponential()) {
              const double umax = u.col(c0 + c).maxCoeff();
              for (int mu = 0; mu < p; ++mu) h(mu, c) = std::exp((n - 1) * (u(mu, c0 + c) - umax));
            } else {
              for (int mu = 0; mu < p; ++mu) h(mu, c) = t.f(u(mu, c0 + c), n);
            }
          } else {
            for (int mu = 0; mu < p; ++mu) h(mu, c) = t.f.full(d(mu, c0 + c), n);
          }
        }
        field.noalias() += t.weight * (outs[k].transpose() * h);
      }
    }
    for (int c = 0; c < bs; ++c) {
      for (int i = 0; i < n; ++i) {
        if ((field(i, c) >= 0.0) != (target(c0 + c, i) > 0.0)) return false;
      }
    }
  }
  return true;
}

CapacityEstimate estimate_capacity(const RuleConfig& cfg, int n, CapacityKind kind,
                                   const CapacityProtocolConfig& proto, std::uint64_t seed,
                                   const PatternDistribution& dist) {
  cfg.validate();
  proto.validate();
  if (n < 2) throw std::invalid_argument("network size must be >= 2");
  if (kind == CapacityKind::Sequence) (void)field_terms(cfg);

  CapacityEstimate est;
  est.rule = cfg.describe();
  est.kind = kind;
  est.n_neurons = n;
  est.seed = seed;
  est.distribution = dist.describe();
  try {
    est.theory = theory_capacity(cfg, n, kind);
  } catch (const std::invalid_argument&) {
    est.theory = 0.0;
  }
  int p_seed = proto.p0_override;
  if (p_seed == 0) {
    if (!(est.theory > 0.0)) throw std::invalid_argument("no theory value to seed P0; set p0");
    p_seed = static_cast<int>(std::min(std::ceil(proto.p0_multiplier * est.theory), 1e9));
  }
  p_seed = std::max(p_seed, 2);

  for (int rep = 0; rep < proto.n_repeats; ++rep) {
    int p0 = p_seed;
    int p = p0;
    bool first = true;
    bool floor = false;
    int round = 0;
    for (;; ++round) {
      if (round >= proto.max_rounds) throw std::runtime_error("capacity search exceeded max_rounds");
      std::atomic<bool> failed{false};
      parallel_for(
          proto.n_sequences, proto.threads,
          [&](int seq) {
            CounterRng rng = CounterRng::substream(seed, static_cast<std::uint64_t>(rep),
                                                   static_cast<std::uint64_t>(round),
                                                   static_cast<std::uint64_t>(seq));
            const PatternSet ps = generate_patterns(dist, n, p, rng);
            const bool ok = kind == CapacityKind::Transition ? transition_correct(ps, cfg)
                                                             : sequence_correct(ps, cfg);
            if (!ok) failed.store(true);
          },
          [&] { return failed.load(); });

      if (!failed.load()) {
        if (first) {
          // Started below capacity: restart higher.
          if (p0 > (1 << 28)) throw std::runtime_error("capacity search P0 grew without bound");
          p0 *= 2;
          p = p0;
          continue;
        }
        break;
      }
      first = false;
      if (p <= 2) {
        floor = true;
        p = 2;
        break;
      }
      p = std::max(2, std::min(p - 1, static_cast<int>(std::floor(proto.decay * p))));
    }
    est.capacities.push_back(p);
    est.starting_p.push_back(p0);
    est.rounds.push_back(round + 1);
    est.floor_reached.push_back(floor);
  }

  MomentAccumulator acc;
  for (int c : est.capacities) acc.add(c);
  est.mean = acc.mean();
  est.stddev = acc.count() > 1 ? std::sqrt(acc.variance()) : 0.0;
  return est;
}

int Histogram::modes(double valley_ratio) const {
  const int b = static_cast<int>(counts.size());
  if (b == 0) return 0;
  std::vector<double> s(static_cast<std::size_t>(b), 0.0);
  for (int i = 0; i < b; ++i) {
    double acc = 0.0;
    int m = 0;
    for (int k = std::max(0, i - 2); k <= std::min(b - 1, i + 2); ++k, ++m) acc += counts[k];
    s[i] = acc / m;
  }
  const double top = *std::max_element(s.begin(), s.end());
  if (!(top > 0.0)) return 0;
  std::vector<int> peaks;
  for (int i = 0; i < b; ++i) {
    const bool left = i == 0 || s[i] > s[i - 1];
    const bool right = i == b - 1 || s[i] >= s[i + 1];
    if (left && right && s[i] >= 0.05 * top) peaks.push_back(i);
  }
  std::vector<int> kept;
  for (int pk : peaks) {
    if (kept.empty()) {
      kept.push_back(pk);
      continue;
    }
    const int last = kept.back();
    const double valley = *std::min_element(s.begin() + last, s.begin() + pk + 1);
    if (valley <= valley_ratio * std::min(s[last], s[pk])) {
      kept.push_back(pk);
    } else if (s[pk] > s[last]) {
      kept.back() = pk;
    }
  }
  return static_cast<int>(kept.size());
}

Histogram make_histogram(const std::vector<double>& xs, int bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  Histogram h;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  if (xs.empty()) {
    for (int k = 0; k <= bins; ++k) h.edges[k] = k;
    return h;
  }
  double lo = *std::min_element(xs.begin(), xs.end());
  double hi = *std::max_element(xs.begin(), xs.end());
  if (hi <= lo) hi = lo + 1.0;
  const double w = (hi - lo) / bins;
  for (int k = 0; k <= bins; ++k) h.edges[k] = lo + w * k;
  h.edges[bins] = hi;
  for (double x : xs) {
    int k = static_cast<int>((x - lo) / w);
    k = std::clamp(k, 0, bins - 1);
    ++h.counts[k];
  }
  return h;
}

CrosstalkStats sample_crosstalk(const RuleConfig& cfg, int n, int p, std::int64_t n_samples,
                                std::uint64_t seed, int bins, int threads) {
  cfg.validate();
  if (n < 3 || p < 3) throw std::invalid_argument("crosstalk sampling needs N >= 3 and P >= 3");
  if (n_samples < 4) throw std::invalid_argument("crosstalk sampling needs at least 4 samples");
  if (cfg.rule == RuleKind::GPI) throw std::invalid_argument("no crosstalk sampler for GPI");
  if (cfg.overlap != OverlapConvention::SelfExcluded) {
    throw std::invalid_argument("crosstalk sampler uses self-excluded overlaps");
  }
  const bool mixed = cfg.rule == RuleKind::MixedNet;
  const bool autoassoc = cfg.rule == RuleKind::Hopfield || cfg.rule == RuleKind::MHN;
  const InteractionFunction f = (cfg.rule == RuleKind::SeqNet || cfg.rule == RuleKind::Hopfield)
                                    ? InteractionFunction::identity()
                                    : cfg.f;

  constexpr std::int64_t kBlock = 4096;
  const std::int64_t n_blocks = (n_samples + kBlock - 1) / kBlock;
  std::vector<double> samples(static_cast<std::size_t>(n_samples));
  std::vector<signed char> branch(mixed ? static_cast<std::size_t>(n_samples) : 0);
  std::vector<MomentAccumulator> acc(static_cast<std::size_t>(n_blocks));
  const int wpr = words_for(n);
  const PatternDistribution rad = PatternDistribution::rademacher(seed);

  parallel_for(static_cast<int>(n_blocks), threads, [&](int blk) {
    CounterRng rng = CounterRng::substream(seed, static_cast<std::uint64_t>(blk), 0, 0x5eed);
    std::vector<Word> rows(static_cast<std::size_t>(p) * wpr);
    const std::int64_t begin = blk * kBlock;
    const std::int64_t end = std::min(n_samples, begin + kBlock);
    for (std::int64_t smp = begin; smp < end; ++smp) {
      for (int mu = 0; mu < p; ++mu) {
        fill_random_row(rad, n, rng, std::span<Word>(rows.data() + static_cast<std::size_t>(mu) * wpr, wpr));
      }
      auto row = [&](int mu) {
        return std::span<const Word>(rows.data() + static_cast<std::size_t>(mu) * wpr, wpr);
      };
      auto first_bit = [&](int mu) { return (rows[static_cast<std::size_t>(mu) * wpr] & 1U) ? 1 : -1; };
      const int x0 = first_bit(0);
      const int x1 = first_bit(1);
      NeumaierSum c;
      if (mixed) c.add(static_cast<double>(x1 * x0));
      for (int mu = 1; mu < p; ++mu) {
        const int xm = first_bit(mu);
        const int k = agreement(row(mu), row(0), n) - xm * x0;
        const int xn = first_bit(mu + 1 == p ? 0 : mu + 1);
        if (mixed) {
          c.add(x1 * xm * cfg.f.excluded(k, n));
          c.add(cfg.lambda * x1 * xn * cfg.f_a.excluded(k, n));
        } else if (autoassoc) {
          c.add(x0 * xm * f.excluded(k, n));
        } else {
          c.add(x1 * xn * f.excluded(k, n));
        }
      }
      const double v = c.value();
      samples[static_cast<std::size_t>(smp)] = v;
      if (mixed) branch[static_cast<std::size_t>(smp)] = static_cast<signed char>(x1 * x0);
      acc[static_cast<std::size_t>(blk)].add(v);
    }
  });

  MomentAccumulator total;
  for (const auto& a : acc) total.merge(a);

  CrosstalkStats st;
  st.rule = cfg.describe();
  st.n_neurons = n;
  st.n_patterns = p;
  st.n_samples = n_samples;
  st.seed = seed;
  st.mean = total.mean();
  st.variance = total.variance();
  st.excess_kurtosis = total.excess_kurtosis();
  const double ns = static_cast<double>(n_samples);
  st.term_variance = st.variance / (p - 1);
  st.term_variance_se =
      st.variance * std::sqrt(2.0 / (ns - 1.0) + std::max(st.excess_kurtosis, -2.0) / ns) / (p - 1);
  st.histogram = make_histogram(samples, bins);
  st.histogram_modes = st.histogram.modes();
  const double skew = total.skewness();
  st.bimodality_coefficient =
      (skew * skew + 1.0) / (st.excess_kurtosis + 3.0 * (ns - 1) * (ns - 1) / ((ns - 2) * (ns - 3)));

  if (mixed) {
    st.mixed = true;
    MomentAccumulator am;
    MomentAccumulator ap;
    for (std::int64_t i = 0; i < n_samples; ++i) {
      (branch[static_cast<std::size_t>(i)] > 0 ? ap : am).add(samples[static_cast<std::size_t>(i)]);
    }
    auto fill = [&](const MomentAccumulator& a, BranchStats& b) {
      b.count = a.count();
      b.weight = static_cast<double>(a.count()) / ns;
      b.mean = a.mean();
      b.variance = a.count() > 1 ? a.variance() : 0.0;
    };
    fill(am, st.minus);
    fill(ap, st.plus);
    st.mixed_theory = mixed_crosstalk_theory(cfg.f, cfg.f_a, cfg.lambda, n, p);
    st.theory_term_variance = st.mixed_theory.variance / (p - 1);
    st.theory_term_variance_exact = st.theory_term_variance;
  } else {
    st.theory_term_variance = crosstalk_variance_theory(f, n);
    st.theory_term_variance_exact = exact_term_moment(f, n, 2);
    st.theory_kurtosis = crosstalk_kurtosis_theory(f, n, p);
  }
  return st;
}

std::vector<BiasSweepRow> bias_sweep(const std::vector<RuleConfig>& rules, int n,
                                     const std::vector<double>& epsilons,
                                     const CapacityProtocolConfig& proto, std::uint64_t seed,
                                     CapacityKind kind) {
  for (double e : epsilons) {
    if (!(e >= 0.0 && e < 1.0)) throw std::invalid_argument("bias epsilon must lie in [0, 1)");
  }
  std::vector<BiasSweepRow> rows;
  for (const auto& cfg : rules) {
    for (double e : epsilons) {
      // The same seed for every epsilon couples the draws across the sweep.
      const auto dist = PatternDistribution::biased(e, seed);
      rows.push_back({cfg.describe(), e, estimate_capacity(cfg, n, kind, proto, seed, dist)});
    }
  }
  return rows;
}

int DwellReport::patterns_with_dwell(int length) const {
  std::set<int> hit;
  for (std::size_t k = 1; k + 1 < segments.size(); ++k) {
    if (segments[k].length == length) hit.insert(segments[k].pattern);
  }
  return static_cast<int>(hit.size());
}

DwellReport dwell_analysis(const Trajectory& traj, double threshold) {
  const auto& m = traj.overlaps;
  if (m.size() == 0) throw std::invalid_argument("trajectory has no recorded overlaps");
  const int p = static_cast<int>(m.cols());
  DwellReport rep;
  int gap = 0;
  int longest_gap = 0;
  for (Eigen::Index t = 0; t < m.rows(); ++t) {
    Eigen::Index best = 0;
    const double v = m.row(t).maxCoeff(&best);
    if (v < threshold) {
      longest_gap = std::max(longest_gap, ++gap);
      continue;
    }
    gap = 0;
    const int mu = static_cast<int>(best);
    if (!rep.segments.empty() && rep.segments.back().pattern == mu &&
        rep.segments.back().start + rep.segments.back().length == t) {
      ++rep.segments.back().length;
    } else {
      rep.segments.push_back({mu, static_cast<int>(t), 1});
    }
  }
  std::set<int> seen;
  int longest_segment = 0;
  for (const auto& s : rep.segments) {
    seen.insert(s.pattern);
    longest_segment = std::max(longest_segment, s.length);
  }
  rep.patterns_reached = static_cast<int>(seen.size());
  // Brief dips between two aligned segments are transitions, not loss of the sequence.
  rep.lost = rep.segments.empty() || gap > 0 || longest_gap > longest_segment;

  rep.order_correct = !rep.lost;
  for (std::size_t k = 1; k < rep.segments.size() && rep.order_correct; ++k) {
    if (rep.segments[k].pattern != (rep.segments[k - 1].pattern + 1) % p) rep.order_correct = false;
  }
  if (rep.segments.size() >= 3) {
    rep.dwell_uniform = true;
    for (std::size_t k = 2; k + 1 < rep.segments.size(); ++k) {
      if (rep.segments[k].length != rep.segments[1].length) rep.dwell_uniform = false;
    }
  }
  return rep;
}

RecallReport run_recall(const PatternSet& ps, const RuleConfig& cfg, int steps,
                        const std::vector<int>& dump_times) {
  cfg.validate();
  if (steps < 0) steps = ps.n_patterns() - 1;
  const bool memoryless = cfg.rule != RuleKind::MixedNet || cfg.tau == 1;
  RecallReport rep;
  rep.steps = steps;

  Eigen::MatrixXd o_pinv;
  if (cfg.rule == RuleKind::GPI) o_pinv = pseudoinverse_psd(overlap_matrix(ps), cfg.tol);
  StateHistory history(cfg.rule == RuleKind::MixedNet ? cfg.tau : 1);

  std::vector<StateVector> states;
  states.reserve(static_cast<std::size_t>(steps) + 1);
  states.push_back(ps.pattern(0));
  history.push(states.back());
  std::unordered_map<std::uint64_t, std::vector<int>> seen;
  auto hash = [](const StateVector& s) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (Word w : s.words()) h = CounterRng::mix64(h ^ w);
    return h;
  };
  seen[hash(states[0])].push_back(0);

  int cycle_start = -1;
  int period = 0;
  for (int t = 1; t <= steps; ++t) {
    if (cycle_start >= 0) {
      states.push_back(states[static_cast<std::size_t>(cycle_start + (t - cycle_start) % period)]);
      continue;
    }
    const StateVector& s = states.back();
    StateVector next;
    switch (cfg.rule) {
      case RuleKind::SeqNet:
        next = densenet_update(s, ps, InteractionFunction::identity(), cfg.overlap);
        break;
      case RuleKind::DenseNet: next = densenet_update(s, ps, cfg.f, cfg.overlap); break;
      case RuleKind::Hopfield:
        next = hopfield_update(s, ps, InteractionFunction::identity(), cfg.overlap);
        break;
      case RuleKind::MHN: next = hopfield_update(s, ps, cfg.f, cfg.overlap); break;
      case RuleKind::MixedNet: next = mixednet_update(history, ps, cfg); break;
      case RuleKind::GPI: next = gpi_update(s, ps, cfg.f, o_pinv); break;
    }
    history.push(next);
    auto& bucket = seen[hash(next)];
    for (int prev : bucket) {
      if (states[static_cast<std::size_t>(prev)] == next) {
        if (!rep.repeated_state) {
          rep.repeated_state = true;
          rep.first_repeat_t = t;
          rep.repeat_of = prev;
        }
        if (memoryless) {
          cycle_start = prev;
          period = t - prev;
        }
        break;
      }
    }
    bucket.push_back(t);
    states.push_back(std::move(next));
  }

  rep.overlap_with_target.resize(static_cast<std::size_t>(steps) + 1);
  for (int t = 0; t <= steps; ++t) {
    const auto target = ps.row(t);
    const int h = mismatch_count(states[static_cast<std::size_t>(t)], target);
    rep.overlap_with_target[t] = static_cast<double>(ps.n_neurons() - 2 * h) / ps.n_neurons();
    if (t > 0 && h == 0) ++rep.exact_steps;
  }
  rep.accuracy = steps > 0 ? static_cast<double>(rep.exact_steps) / steps : 1.0;
  for (int t : dump_times) {
    if (t >= 0 && t <= steps) rep.dumps.emplace_back(t, states[static_cast<std::size_t>(t)]);
  }
  return rep;
}

}  // namespace seqmem
