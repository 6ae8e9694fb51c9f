#include "seqmem/rules.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "seqmem/numerics.hpp"

namespace seqmem {
namespace {

std::vector<std::int8_t> unpack(const StateVector& s) {
  std::vector<std::int8_t> out(static_cast<std::size_t>(s.size()));
  for (int j = 0; j < s.size(); ++j) out[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(s.value(j));
  return out;
}

void check_sizes(const StateVector& s, const PatternSet& ps) {
  if (s.size() != ps.n_neurons()) throw std::invalid_argument("state and patterns differ in size");
}

// field_i = sum_mu row(mu)_i * h[mu], accumulated in mu order with compensation.
// Shared by the direct full-divisor rules and the two-layer form so both give
// identical bits.
template <typename RowFn>
std::vector<double> weighted_rows(int n, int p, RowFn row, const double* h) {
  std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
  std::vector<double> comp(static_cast<std::size_t>(n), 0.0);
  for (int mu = 0; mu < p; ++mu) {
    const double hm = h[mu];
    if (hm == 0.0) continue;
    const auto* r = row(mu);
    for (int i = 0; i < n; ++i) neumaier_add(sum[i], comp[i], static_cast<double>(r[i]) * hm);
  }
  for (int i = 0; i < n; ++i) sum[i] += comp[i];
  return sum;
}

// Self-excluded rules: field_i = sum_mu out(mu)_i f((D_mu - xi_i^mu s_i) / (N-1)).
// The argument takes only two values per pattern, so f is evaluated twice per mu.
std::vector<double> excluded_fields(const StateVector& s, const PatternSet& ps,
                                    const InteractionFunction& f, int out_shift) {
  const int n = ps.n_neurons();
  const int p = ps.n_patterns();
  const auto ss = unpack(s);
  std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
  std::vector<double> comp(static_cast<std::size_t>(n), 0.0);
  for (int mu = 0; mu < p; ++mu) {
    const int d = agreement(ps.row(mu), s.words(), n);
    const double f_agree = f.excluded(d - 1, n);
    const double f_disagree = f.excluded(d + 1, n);
    if (f_agree == 0.0 && f_disagree == 0.0) continue;
    const std::int8_t* xi = ps.signs(mu).data();
    const std::int8_t* out = ps.signs(ps.wrap(mu + out_shift)).data();
    for (int i = 0; i < n; ++i) {
      const double t = (xi[i] == ss[i]) ? f_agree : f_disagree;
      neumaier_add(sum[i], comp[i], out[i] * t);
    }
  }
  for (int i = 0; i < n; ++i) sum[i] += comp[i];
  return sum;
}

std::vector<double> full_fields(const StateVector& s, const PatternSet& ps,
                                const InteractionFunction& f, int out_shift) {
  const int n = ps.n_neurons();
  const int p = ps.n_patterns();
  std::vector<double> h(static_cast<std::size_t>(p));
  for (int mu = 0; mu < p; ++mu) h[mu] = f.full(agreement(ps.row(mu), s.words(), n), n);
  return weighted_rows(
      n, p, [&](int mu) { return ps.signs(ps.wrap(mu + out_shift)).data(); }, h.data());
}

}  // namespace

std::string to_string(RuleKind k) {
  switch (k) {
    case RuleKind::SeqNet: return "seqnet";
    case RuleKind::DenseNet: return "densenet";
    case RuleKind::Hopfield: return "hopfield";
    case RuleKind::MHN: return "mhn";
    case RuleKind::MixedNet: return "mixednet";
    case RuleKind::GPI: return "gpi";
  }
  return "?";
}

RuleKind parse_rule_kind(const std::string& name) {
  if (name == "seqnet") return RuleKind::SeqNet;
  if (name == "densenet") return RuleKind::DenseNet;
  if (name == "hopfield") return RuleKind::Hopfield;
  if (name == "mhn") return RuleKind::MHN;
  if (name == "mixednet" || name == "tan") return RuleKind::MixedNet;
  if (name == "gpi") return RuleKind::GPI;
  throw std::invalid_argument("unknown rule '" + name + "'");
}

TemporalKernel TemporalKernel::exponential_decay(double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw std::invalid_argument("decay rate must be >= 0");
  return TemporalKernel(Kind::ExponentialDecay, rate, {});
}

TemporalKernel TemporalKernel::custom(std::vector<double> weights) {
  if (weights.empty()) throw std::invalid_argument("custom kernel needs at least one weight");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("kernel weights must be non-negative");
    total += w;
  }
  if (!(weights.front() > 0.0) || !(total > 0.0)) {
    throw std::invalid_argument("kernel must put weight on the current state");
  }
  return TemporalKernel(Kind::Custom, 0.0, std::move(weights));
}

std::string TemporalKernel::name() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::UniformStep: os << "uniform"; break;
    case Kind::ExponentialDecay: os << "expdecay:" << rate_; break;
    case Kind::Custom:
      os << "custom:";
      for (std::size_t k = 0; k < custom_.size(); ++k) os << (k ? "," : "") << custom_[k];
      break;
  }
  return os.str();
}

std::vector<double> TemporalKernel::weights(int tau, int available) const {
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (kind_ == Kind::Custom && static_cast<int>(custom_.size()) != tau) {
    throw std::invalid_argument("custom kernel length must equal tau");
  }
  const int len = std::max(1, std::min(tau, available));
  std::vector<double> w(static_cast<std::size_t>(len));
  for (int r = 0; r < len; ++r) {
    switch (kind_) {
      case Kind::UniformStep: w[r] = 1.0; break;
      case Kind::ExponentialDecay: w[r] = std::exp(-rate_ * r); break;
      case Kind::Custom: w[r] = custom_[static_cast<std::size_t>(r)]; break;
    }
  }
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return w;
}

RuleConfig RuleConfig::seqnet() {
  RuleConfig c;
  c.rule = RuleKind::SeqNet;
  c.f = InteractionFunction::identity();
  return c;
}

RuleConfig RuleConfig::densenet(InteractionFunction f) {
  RuleConfig c;
  c.rule = RuleKind::DenseNet;
  c.f = f;
  return c;
}

RuleConfig RuleConfig::hopfield() {
  RuleConfig c;
  c.rule = RuleKind::Hopfield;
  c.f = InteractionFunction::identity();
  return c;
}

RuleConfig RuleConfig::mhn(InteractionFunction f) {
  RuleConfig c;
  c.rule = RuleKind::MHN;
  c.f = f;
  return c;
}

RuleConfig RuleConfig::mixednet(InteractionFunction f_s, InteractionFunction f_a, double lambda,
                                int tau, TemporalKernel kernel) {
  RuleConfig c;
  c.rule = RuleKind::MixedNet;
  c.f = f_s;
  c.f_a = f_a;
  c.lambda = lambda;
  c.tau = tau;
  c.kernel = std::move(kernel);
  c.validate();
  return c;
}

RuleConfig RuleConfig::gpi(InteractionFunction f, double tol) {
  RuleConfig c;
  c.rule = RuleKind::GPI;
  c.f = f;
  c.tol = tol;
  c.overlap = OverlapConvention::FullDivisor;
  c.validate();
  return c;
}

void RuleConfig::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (rule == RuleKind::GPI && !(tol > 0.0 && tol <= 1e-6)) {
    throw std::invalid_argument("GPI tolerance must lie in (0, 1e-6]");
  }
  if (rule == RuleKind::MixedNet) (void)kernel.weights(tau, tau);
}

std::string RuleConfig::describe() const {
  std::ostringstream os;
  os << to_string(rule);
  switch (rule) {
    case RuleKind::SeqNet:
    case RuleKind::Hopfield: break;
    case RuleKind::DenseNet:
    case RuleKind::MHN: os << "(" << f.name() << ")"; break;
    case RuleKind::GPI: os << "(" << f.name() << ",tol=" << tol << ")"; break;
    case RuleKind::MixedNet:
      os << "(" << f.name() << "," << f_a.name() << ",lambda=" << lambda << ",tau=" << tau
         << ",kernel=" << kernel.name() << ")";
      break;
  }
  if (overlap == OverlapConvention::FullDivisor && rule != RuleKind::GPI) os << "[full]";
  return os.str();
}

StateHistory::StateHistory(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("history capacity must be >= 1");
  states_.reserve(static_cast<std::size_t>(capacity));
}

void StateHistory::push(StateVector s) {
  if (!states_.empty() && s.size() != states_.front().size()) {
    throw std::invalid_argument("history states differ in size");
  }
  head_ = (head_ + 1) % capacity_;
  if (static_cast<int>(states_.size()) < capacity_) {
    states_.push_back(std::move(s));
  } else {
    states_[static_cast<std::size_t>(head_)] = std::move(s);
  }
}

const StateVector& StateHistory::at(int rho) const {
  if (rho < 0 || rho >= size()) throw std::out_of_range("history index out of range");
  const int idx = ((head_ - rho) % capacity_ + capacity_) % capacity_;
  return states_[static_cast<std::size_t>(idx)];
}

StateVector sign_state(std::span<const double> field) {
  StateVector out(static_cast<int>(field.size()));
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] >= 0.0) out.set(static_cast<int>(i), 1);
  }
  return out;
}

std::vector<int> agreements(const PatternSet& ps, const StateVector& s) {
  check_sizes(s, ps);
  std::vector<int> d(static_cast<std::size_t>(ps.n_patterns()));
  for (int mu = 0; mu < ps.n_patterns(); ++mu) d[mu] = agreement(ps.row(mu), s.words(), ps.n_neurons());
  return d;
}

Eigen::VectorXd overlaps_full(const PatternSet& ps, const StateVector& s) {
  const auto d = agreements(ps, s);
  Eigen::VectorXd m(ps.n_patterns());
  for (int mu = 0; mu < ps.n_patterns(); ++mu) m(mu) = static_cast<double>(d[mu]) / ps.n_neurons();
  return m;
}

StateVector seqnet_update(const StateVector& s, const PatternSet& ps) {
  return densenet_update(s, ps, InteractionFunction::identity());
}

StateVector densenet_update(const StateVector& s, const PatternSet& ps,
                            const InteractionFunction& f, OverlapConvention ov) {
  check_sizes(s, ps);
  const auto field = ov == OverlapConvention::SelfExcluded ? excluded_fields(s, ps, f, 1)
                                                           : full_fields(s, ps, f, 1);
  return sign_state(field);
}

StateVector hopfield_update(const StateVector& s, const PatternSet& ps,
                            const InteractionFunction& f, OverlapConvention ov) {
  check_sizes(s, ps);
  const auto field = ov == OverlapConvention::SelfExcluded ? excluded_fields(s, ps, f, 0)
                                                           : full_fields(s, ps, f, 0);
  return sign_state(field);
}

StateVector mixednet_update(const StateHistory& history, const PatternSet& ps,
                            const RuleConfig& cfg) {
  const StateVector& s = history.current();
  check_sizes(s, ps);
  const int n = ps.n_neurons();
  const int p = ps.n_patterns();
  const auto w = cfg.kernel.weights(cfg.tau, history.size());
  const int len = static_cast<int>(w.size());

  // S_bar and D_bar = sum_rho w_rho D_rho (the overlap is linear in the state).
  std::vector<double> s_bar(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < len; ++r) {
    const StateVector& past = history.at(r);
    for (int i = 0; i < n; ++i) s_bar[i] += w[r] * past.value(i);
  }
  std::vector<double> d_bar(static_cast<std::size_t>(p), 0.0);
  for (int r = 0; r < len; ++r) {
    const auto d = agreements(ps, history.at(r));
    for (int mu = 0; mu < p; ++mu) d_bar[mu] += w[r] * d[mu];
  }

  const auto ss = unpack(s);
  const bool excl = cfg.overlap == OverlapConvention::SelfExcluded;
  const double nm1 = n - 1;
  std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
  std::vector<double> comp(static_cast<std::size_t>(n), 0.0);
  for (int mu = 0; mu < p; ++mu) {
    const int d = agreement(ps.row(mu), s.words(), n);
    const std::int8_t* xi = ps.signs(mu).data();
    const std::int8_t* xi_next = ps.signs(ps.next(mu)).data();
    double fs_agree = 0.0;
    double fs_disagree = 0.0;
    double fa_full = 0.0;
    if (excl) {
      fs_agree = cfg.f.excluded(d - 1, n);
      fs_disagree = cfg.f.excluded(d + 1, n);
    } else {
      fs_agree = fs_disagree = cfg.f.full(d, n);
      fa_full = cfg.f_a.full(d_bar[mu], n);
    }
    if (!excl && fs_agree == fa_full) {
      // Same coefficient for both terms: sum in the two-layer order, (xi + lambda xi') h.
      for (int i = 0; i < n; ++i) {
        neumaier_add(sum[i], comp[i], (xi[i] + cfg.lambda * xi_next[i]) * fa_full);
      }
      continue;
    }
    for (int i = 0; i < n; ++i) {
      const double fs = (xi[i] == ss[i]) ? fs_agree : fs_disagree;
      double fa = fa_full;
      if (excl) {
        const double k = d_bar[mu] - xi[i] * s_bar[i];
        fa = cfg.f_a.is_exponential() ? std::exp(k - nm1) : cfg.f_a(k / nm1, n);
      }
      neumaier_add(sum[i], comp[i], xi[i] * fs);
      neumaier_add(sum[i], comp[i], cfg.lambda * xi_next[i] * fa);
    }
  }
  for (int i = 0; i < n; ++i) sum[i] += comp[i];
  return sign_state(sum);
}

StateVector gpi_update_from_coefficients(const PatternSet& ps, const InteractionFunction& f,
                                         const Eigen::VectorXd& u) {
  const int n = ps.n_neurons();
  const int p = ps.n_patterns();
  if (u.size() != p) throw std::invalid_argument("coefficient vector has the wrong length");
  std::vector<double> h(static_cast<std::size_t>(p));
  if (f.is_exponential()) {
    // Common positive factor exp(-(N-1) u_max) does not change the sign.
    const double umax = u.maxCoeff();
    for (int mu = 0; mu < p; ++mu) h[mu] = std::exp(static_cast<double>(n - 1) * (u(mu) - umax));
  } else {
    for (int mu = 0; mu < p; ++mu) h[mu] = f(u(mu), n);
  }
  return sign_state(weighted_rows(
      n, p, [&](int mu) { return ps.signs(ps.next(mu)).data(); }, h.data()));
}

StateVector gpi_update(const StateVector& s, const PatternSet& ps, const InteractionFunction& f,
                       const Eigen::MatrixXd& o_pinv) {
  check_sizes(s, ps);
  if (o_pinv.rows() != ps.n_patterns() || o_pinv.cols() != ps.n_patterns()) {
    throw std::invalid_argument("pseudoinverse has the wrong shape");
  }
  const Eigen::VectorXd u = o_pinv * overlaps_full(ps, s);
  return gpi_update_from_coefficients(ps, f, u);
}

TwoLayerWeights build_two_layer(const PatternSet& ps, const RuleConfig& cfg) {
  if (cfg.rule != RuleKind::DenseNet && cfg.rule != RuleKind::SeqNet &&
      cfg.rule != RuleKind::MixedNet) {
    throw std::invalid_argument("two-layer form exists for seqnet, densenet and mixednet");
  }
  const int n = ps.n_neurons();
  const int p = ps.n_patterns();
  TwoLayerWeights tw;
  tw.n_neurons = n;
  tw.n_patterns = p;
  tw.w_sign.resize(n, p);
  tw.m.resize(p, n);
  for (int mu = 0; mu < p; ++mu) {
    const auto xi = ps.signs(mu);
    const auto xi_next = ps.signs(ps.next(mu));
    for (int j = 0; j < n; ++j) {
      tw.w_sign(j, mu) = xi[j];
      tw.m(mu, j) = cfg.rule == RuleKind::MixedNet ? xi[j] + cfg.lambda * xi_next[j]
                                                   : static_cast<double>(xi_next[j]);
    }
  }
  return tw;
}

StateVector two_layer_update(const StateVector& v, const TwoLayerWeights& tw,
                             const InteractionFunction& f) {
  const int n = tw.n_neurons;
  const int p = tw.n_patterns;
  if (v.size() != n) throw std::invalid_argument("state and weights differ in size");
  const auto vs = unpack(v);
  std::vector<double> h(static_cast<std::size_t>(p));
  for (int mu = 0; mu < p; ++mu) {
    int pre = 0;
    for (int j = 0; j < n; ++j) pre += tw.w_sign(j, mu) * vs[j];
    h[mu] = f.full(pre, n);
  }
  return sign_state(weighted_rows(n, p, [&](int mu) { return tw.m.row(mu).data(); }, h.data()));
}

Trajectory run_sequence(const StateVector& initial, const PatternSet& ps, const RuleConfig& cfg,
                        int steps, bool record_overlaps) {
  cfg.validate();
  check_sizes(initial, ps);
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  Trajectory traj;
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.push_back(initial);

  Eigen::MatrixXd o_pinv;
  if (cfg.rule == RuleKind::GPI && steps > 0) {
    o_pinv = pseudoinverse_psd(overlap_matrix(ps), cfg.tol);
  }
  StateHistory history(cfg.rule == RuleKind::MixedNet ? cfg.tau : 1);
  history.push(initial);

  for (int t = 0; t < steps; ++t) {
    const StateVector& s = traj.states.back();
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
    traj.states.push_back(std::move(next));
  }

  if (record_overlaps) {
    traj.overlaps.resize(static_cast<Eigen::Index>(traj.states.size()), ps.n_patterns());
    for (std::size_t t = 0; t < traj.states.size(); ++t) {
      traj.overlaps.row(static_cast<Eigen::Index>(t)) = overlaps_full(ps, traj.states[t]).transpose();
    }
  }
  return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.overlaps.size() == 0) throw std::invalid_argument("trajectory has no recorded overlaps");
  os << "t,mu,m\n";
  os << std::setprecision(17);
  for (Eigen::Index t = 0; t < traj.overlaps.rows(); ++t) {
    for (Eigen::Index mu = 0; mu < traj.overlaps.cols(); ++mu) {
      os << t << ',' << mu << ',' << traj.overlaps(t, mu) << '\n';
    }
  }
}

void write_trajectory_states(const std::filesystem::path& path, const Trajectory& traj) {
  write_patterns(path, PatternSet::from_states(traj.states));
}

}  // namespace seqmem
