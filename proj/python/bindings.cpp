#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "seqmem/harness.hpp"
#include "seqmem/numerics.hpp"
#include "seqmem/patterns.hpp"
#include "seqmem/results.hpp"
#include "seqmem/rules.hpp"
#include "seqmem/theory.hpp"

namespace py = pybind11;
using namespace seqmem;

namespace {

using IntArray = py::array_t<int, py::array::c_style | py::array::forcecast>;

PatternSet to_patterns(const IntArray& a) {
  if (a.ndim() != 2) throw std::invalid_argument("patterns must be a 2-D array (P, N)");
  const auto p = static_cast<int>(a.shape(0));
  const auto n = static_cast<int>(a.shape(1));
  return PatternSet::from_bipolar(n, p, std::span<const int>(a.data(), a.size()));
}

StateVector to_state(const IntArray& a) {
  if (a.ndim() != 1) throw std::invalid_argument("state must be a 1-D array");
  return StateVector::from_bipolar(std::span<const int>(a.data(), a.size()));
}

py::array_t<std::int8_t> from_state(const StateVector& s) {
  py::array_t<std::int8_t> out(s.size());
  auto* d = out.mutable_data();
  for (int j = 0; j < s.size(); ++j) d[j] = static_cast<std::int8_t>(s.value(j));
  return out;
}

py::array_t<std::int8_t> from_states(const std::vector<StateVector>& rows, int n) {
  py::array_t<std::int8_t> out({static_cast<py::ssize_t>(rows.size()), static_cast<py::ssize_t>(n)});
  auto* d = out.mutable_data();
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (int j = 0; j < n; ++j) d[t * n + j] = static_cast<std::int8_t>(rows[t].value(j));
  return out;
}

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

TemporalKernel parse_kernel(const std::string& kernel) {
  if (kernel == "uniform") return TemporalKernel::uniform();
  if (kernel.rfind("exp:", 0) == 0) return TemporalKernel::exponential_decay(std::stod(kernel.substr(4)));
  throw std::invalid_argument("kernel must be 'uniform' or 'exp:<rate>'");
}

RuleConfig make_rule(const std::string& name, const std::string& f, const std::string& f_a, double lambda,
                     int tau, const std::string& kernel, double tol, const std::string& overlap) {
  const RuleKind kind = parse_rule_kind(name);
  const InteractionFunction fn = InteractionFunction::parse(f);
  RuleConfig cfg;
  switch (kind) {
    case RuleKind::SeqNet: cfg = RuleConfig::seqnet(); break;
    case RuleKind::DenseNet: cfg = RuleConfig::densenet(fn); break;
    case RuleKind::Hopfield: cfg = RuleConfig::hopfield(); break;
    case RuleKind::MHN: cfg = RuleConfig::mhn(fn); break;
    case RuleKind::MixedNet:
      cfg = RuleConfig::mixednet(fn, f_a.empty() ? fn : InteractionFunction::parse(f_a), lambda, tau,
                                 parse_kernel(kernel));
      break;
    case RuleKind::GPI: cfg = RuleConfig::gpi(fn, tol); break;
  }
  if (overlap == "full") {
    cfg.overlap = OverlapConvention::FullDivisor;
  } else if (overlap != "excluded") {
    throw std::invalid_argument("overlap must be 'excluded' or 'full'");
  }
  cfg.validate();
  return cfg;
}

CapacityProtocolConfig make_protocol(int n_sequences, int n_repeats, double decay, double p0_multiplier,
                                     int p0, int max_rounds, int threads) {
  CapacityProtocolConfig proto;
  proto.n_sequences = n_sequences;
  proto.n_repeats = n_repeats;
  proto.decay = decay;
  proto.p0_multiplier = p0_multiplier;
  proto.p0_override = p0;
  proto.max_rounds = max_rounds;
  proto.threads = threads;
  proto.validate();
  return proto;
}

}  // namespace

PYBIND11_MODULE(_seqmem, m) {
  m.doc() = "Sequence memory networks: update rules, capacity harness and theory";
  m.attr("__version__") = version_string();

  py::class_<RuleConfig>(m, "RuleConfig")
      .def(py::init(&make_rule), py::arg("rule") = "densenet", py::arg("f") = "poly:2", py::arg("f_a") = "",
           py::arg("lam") = 2.5, py::arg("tau") = 1, py::arg("kernel") = "uniform", py::arg("tol") = 1e-10,
           py::arg("overlap") = "excluded")
      .def_property_readonly("rule", [](const RuleConfig& c) { return to_string(c.rule); })
      .def_property_readonly("is_sequential", &RuleConfig::is_sequential)
      .def_property_readonly("tau", [](const RuleConfig& c) { return c.tau; })
      .def("describe", &RuleConfig::describe)
      .def("__repr__", [](const RuleConfig& c) { return "RuleConfig(" + c.describe() + ")"; });

  m.def(
      "generate_patterns",
      [](int n, int p, std::uint64_t seed, double epsilon) {
        const auto dist = epsilon == 0.0 ? PatternDistribution::rademacher(seed)
                                         : PatternDistribution::biased(epsilon, seed);
        const auto ps = generate_patterns(dist, n, p);
        std::vector<StateVector> rows;
        for (int mu = 0; mu < p; ++mu) rows.push_back(ps.pattern(mu));
        return from_states(rows, n);
      },
      py::arg("n"), py::arg("p"), py::arg("seed") = 0, py::arg("epsilon") = 0.0,
      "i.i.d. +-1 patterns as an int8 array of shape (P, N).");

  m.def(
      "run_sequence",
      [](const IntArray& initial, const IntArray& patterns, const RuleConfig& cfg, int steps) {
        const auto ps = to_patterns(patterns);
        const auto traj = run_sequence(to_state(initial), ps, cfg, steps, true);
        return py::make_tuple(from_states(traj.states, ps.n_neurons()), traj.overlaps);
      },
      py::arg("initial"), py::arg("patterns"), py::arg("cfg"), py::arg("steps"),
      "Returns (states of shape (steps+1, N), overlaps of shape (steps+1, P)).");

  m.def(
      "update",
      [](const IntArray& state, const IntArray& patterns, const RuleConfig& cfg) {
        const auto ps = to_patterns(patterns);
        return from_state(run_sequence(to_state(state), ps, cfg, 1, false).states.at(1));
      },
      py::arg("state"), py::arg("patterns"), py::arg("cfg"), "One synchronous update from `state`.");

  m.def(
      "transition_correct",
      [](const IntArray& patterns, const RuleConfig& cfg) { return transition_correct(to_patterns(patterns), cfg); },
      py::arg("patterns"), py::arg("cfg"));
  m.def(
      "sequence_correct",
      [](const IntArray& patterns, const RuleConfig& cfg) { return sequence_correct(to_patterns(patterns), cfg); },
      py::arg("patterns"), py::arg("cfg"));

  m.def(
      "estimate_capacity",
      [](const RuleConfig& cfg, int n, const std::string& kind, std::uint64_t seed, double epsilon,
         int n_sequences, int n_repeats, double decay, double p0_multiplier, int p0, int max_rounds,
         int threads) {
        const auto proto = make_protocol(n_sequences, n_repeats, decay, p0_multiplier, p0, max_rounds, threads);
        const auto dist = epsilon == 0.0 ? PatternDistribution::rademacher(seed)
                                         : PatternDistribution::biased(epsilon, seed);
        py::gil_scoped_release release;
        const auto est = estimate_capacity(cfg, n, parse_capacity_kind(kind), proto, seed, dist);
        py::gil_scoped_acquire acquire;
        return to_python(to_json(est));
      },
      py::arg("cfg"), py::arg("n"), py::arg("kind") = "transition", py::arg("seed") = 0,
      py::arg("epsilon") = 0.0, py::arg("n_sequences") = 100, py::arg("n_repeats") = 20,
      py::arg("decay") = 0.99, py::arg("p0_multiplier") = 2.0, py::arg("p0") = 0, py::arg("max_rounds") = 5000,
      py::arg("threads") = 0, "Capacity estimate as a dict.");

  m.def(
      "sample_crosstalk",
      [](const RuleConfig& cfg, int n, int p, std::int64_t samples, std::uint64_t seed, int bins, int threads) {
        CrosstalkStats stats;
        {
          py::gil_scoped_release release;
          stats = sample_crosstalk(cfg, n, p, samples, seed, bins, threads);
        }
        return to_python(to_json(stats));
      },
      py::arg("cfg"), py::arg("n"), py::arg("p"), py::arg("samples") = 1000000, py::arg("seed") = 0,
      py::arg("bins") = 100, py::arg("threads") = 0, "Crosstalk moments and histogram as a dict.");

  m.def(
      "dwell_analysis",
      [](const IntArray& initial, const IntArray& patterns, const RuleConfig& cfg, int steps, double threshold) {
        const auto ps = to_patterns(patterns);
        return to_python(to_json(dwell_analysis(run_sequence(to_state(initial), ps, cfg, steps), threshold)));
      },
      py::arg("initial"), py::arg("patterns"), py::arg("cfg"), py::arg("steps"), py::arg("threshold") = 0.9);

  m.def(
      "run_recall",
      [](const IntArray& patterns, const RuleConfig& cfg, int steps) {
        const auto rep = run_recall(to_patterns(patterns), cfg, steps);
        py::dict d;
        d["steps"] = rep.steps;
        d["exact_steps"] = rep.exact_steps;
        d["accuracy"] = rep.accuracy;
        d["overlap_with_target"] = rep.overlap_with_target;
        d["repeated_state"] = rep.repeated_state;
        d["first_repeat_t"] = rep.first_repeat_t;
        d["repeat_of"] = rep.repeat_of;
        return d;
      },
      py::arg("patterns"), py::arg("cfg"), py::arg("steps") = -1);

  m.def("beta_constant", &beta_constant);
  m.def(
      "theory_capacity",
      [](const RuleConfig& cfg, int n, const std::string& kind) {
        return theory_capacity(cfg, n, parse_capacity_kind(kind));
      },
      py::arg("cfg"), py::arg("n"), py::arg("kind") = "transition");
  m.def(
      "poly_densenet_capacity",
      [](int n, int d, const std::string& kind) { return poly_densenet_capacity(n, d, parse_capacity_kind(kind)); },
      py::arg("n"), py::arg("d"), py::arg("kind") = "transition");
  m.def(
      "exp_densenet_capacity",
      [](int n, const std::string& kind) { return exp_densenet_capacity(n, parse_capacity_kind(kind)); },
      py::arg("n"), py::arg("kind") = "transition");
  m.def("gamma_factor", &gamma_factor, py::arg("d_s"), py::arg("d_a"), py::arg("lam"));
  m.def(
      "crosstalk_variance_theory",
      [](const std::string& f, int n) { return crosstalk_variance_theory(InteractionFunction::parse(f), n); },
      py::arg("f"), py::arg("n"));
  m.def(
      "crosstalk_kurtosis_theory",
      [](const std::string& f, int n, int p) { return crosstalk_kurtosis_theory(InteractionFunction::parse(f), n, p); },
      py::arg("f"), py::arg("n"), py::arg("p"));
  m.def(
      "finite_c_capacity",
      [](int n, double c, const std::string& f, const std::string& kind) {
        return finite_c_capacity(n, c, InteractionFunction::parse(f), parse_capacity_kind(kind));
      },
      py::arg("n"), py::arg("c"), py::arg("f"), py::arg("kind") = "transition");
  m.def(
      "max_degree_profile",
      [](int n) {
        const auto prof = max_degree_profile(n);
        return py::make_tuple(prof.log_capacity, prof.argmax);
      },
      py::arg("n"), "(natural-log transition capacity per degree, argmax degree)");
  m.def("double_factorial", &double_factorial, py::arg("k"));
  m.def("gaussian_tail", &gaussian_tail, py::arg("x"));
  m.def("pseudoinverse_psd", &pseudoinverse_psd, py::arg("o"), py::arg("tol_rel") = 1e-10);
  m.def(
      "overlap_matrix", [](const IntArray& patterns) { return overlap_matrix(to_patterns(patterns)); },
      py::arg("patterns"));
}
