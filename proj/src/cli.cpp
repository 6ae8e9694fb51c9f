#include "seqmem/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "seqmem/datasets.hpp"
#include "seqmem/harness.hpp"
#include "seqmem/numerics.hpp"
#include "seqmem/results.hpp"
#include "seqmem/rules.hpp"
#include "seqmem/theory.hpp"

namespace seqmem {
namespace {

namespace fs = std::filesystem;

/// Raised for invalid configurations detected after flag parsing (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RuleOptions {
  std::string rule = "densenet";
  std::string f = "poly:2";
  std::string f_a;
  double lambda = 2.5;
  int tau = 1;
  std::string kernel = "uniform";
  double tol = 1e-10;
  std::string overlap = "excluded";

  void attach(CLI::App* app) {
    app->add_option("--rule", rule, "seqnet|densenet|hopfield|mhn|mixednet|gpi");
    app->add_option("--f", f, "interaction function: identity|poly:<d>|exp (f_S for mixednet)");
    app->add_option("--f-a", f_a, "MixedNet asymmetric function (defaults to --f)");
    app->add_option("--lambda", lambda, "MixedNet asymmetric strength");
    app->add_option("--tau", tau, "MixedNet kernel length");
    app->add_option("--kernel", kernel, "MixedNet kernel: uniform|exp:<rate>");
    app->add_option("--tol", tol, "GPI relative eigenvalue cut");
    app->add_option("--overlap", overlap, "overlap convention: excluded|full");
  }

  RuleConfig build() const { return build_rule(rule, f); }

  RuleConfig build_rule(const std::string& name, const std::string& fspec) const {
    const RuleKind kind = parse_rule_kind(name);
    const InteractionFunction fn = InteractionFunction::parse(fspec);
    RuleConfig cfg;
    switch (kind) {
      case RuleKind::SeqNet: cfg = RuleConfig::seqnet(); break;
      case RuleKind::DenseNet: cfg = RuleConfig::densenet(fn); break;
      case RuleKind::Hopfield: cfg = RuleConfig::hopfield(); break;
      case RuleKind::MHN: cfg = RuleConfig::mhn(fn); break;
      case RuleKind::MixedNet: {
        const InteractionFunction fa = f_a.empty() ? fn : InteractionFunction::parse(f_a);
        cfg = RuleConfig::mixednet(fn, fa, lambda, tau, parse_kernel());
        break;
      }
      case RuleKind::GPI: cfg = RuleConfig::gpi(fn, tol); break;
    }
    if (kind != RuleKind::GPI) {
      if (overlap == "full") {
        cfg.overlap = OverlapConvention::FullDivisor;
      } else if (overlap != "excluded") {
        throw std::invalid_argument("overlap must be 'excluded' or 'full'");
      }
    }
    cfg.validate();
    return cfg;
  }

  TemporalKernel parse_kernel() const {
    if (kernel == "uniform") return TemporalKernel::uniform();
    if (kernel.rfind("exp:", 0) == 0) return TemporalKernel::exponential_decay(std::stod(kernel.substr(4)));
    throw std::invalid_argument("kernel must be 'uniform' or 'exp:<rate>'");
  }
};

struct ProtocolOptions {
  CapacityProtocolConfig proto;

  void attach(CLI::App* app) {
    app->add_option("--sequences", proto.n_sequences, "sequences per round");
    app->add_option("--repeats", proto.n_repeats, "independent repeats");
    app->add_option("--decay", proto.decay, "length decay factor per failed round");
    app->add_option("--p0-mult", proto.p0_multiplier, "starting length as a multiple of theory");
    app->add_option("--p0", proto.p0_override, "explicit starting length (0 = from theory)");
    app->add_option("--max-rounds", proto.max_rounds, "round limit per repeat");
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split(s, ',')) out.push_back(std::stod(t));
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& t : split(s, ',')) out.push_back(std::stoi(t));
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// key=value lines become "--key value" tokens; '#' starts a comment.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    tokens.push_back("--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

/// Expands --config FILE in place so that later flags override file values.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
      continue;
    }
    const auto toks = config_tokens(path);
    // Config values go right after the subcommand name, before any explicit flag.
    const std::size_t at = out.empty() ? 0 : 1;
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), toks.begin(), toks.end());
  }
  return out;
}

const std::set<std::string> kNonSemantic = {"help", "out", "threads", "config"};

/// Effective value of every result-affecting option of a subcommand.
std::map<std::string, std::string> effective_config(const CLI::App* app) {
  std::map<std::string, std::string> cfg;
  for (const CLI::Option* opt : app->get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty() || kNonSemantic.count(names[0])) continue;
    if (opt->count() > 0) {
      cfg[names[0]] = opt->as<std::string>();
    } else {
      cfg[names[0]] = opt->get_default_str();
    }
  }
  return cfg;
}

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SEQMEM_OUTPUT_DIR"); env && *env) return env;
  return "results";
}

std::string slug(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') c = '_';
  }
  return s;
}

void write_csv(const fs::path& path, const std::function<void(std::ostream&)>& fn) {
  std::ostringstream os;
  fn(os);
  write_text(path, os.str());
}

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "global seed");
    app->add_option("--out", out, "output directory (else $SEQMEM_OUTPUT_DIR, else ./results)");
    app->add_option("--threads", threads, "worker threads (0 = all cores)");
    app->add_option("--config", "key=value configuration file (flags override it)");
  }
};

double stat_value(const std::map<std::string, double>& in, const std::string& key) {
  const auto it = in.find(key);
  if (it == in.end()) throw UsageError("formula needs --" + key);
  return it->second;
}

TheoryPrediction evaluate_theory(const std::string& formula, const std::map<std::string, double>& in,
                                 CapacityKind kind) {
  TheoryPrediction p;
  p.formula_id = formula;
  auto need = [&](const std::string& k) {
    const double v = stat_value(in, k);
    p.inputs[k] = v;
    return v;
  };
  auto need_int = [&](const std::string& k) { return static_cast<int>(need(k)); };
  auto fn = [&]() {
    if (in.count("exp") && in.at("exp") != 0.0) {
      p.inputs["exp"] = 1.0;
      return InteractionFunction::exponential();
    }
    return InteractionFunction::polynomial(need_int("d"));
  };
  const bool transition = kind == CapacityKind::Transition;

  if (formula == "beta") {
    p.value = beta_constant();
  } else if (formula == "poly_capacity") {
    p.inputs["transition"] = transition ? 1.0 : 0.0;
    const int n = need_int("n");
    p.value = poly_densenet_capacity(n, need_int("d"), kind);
  } else if (formula == "exp_capacity") {
    p.inputs["transition"] = transition ? 1.0 : 0.0;
    p.value = exp_densenet_capacity(need_int("n"), kind);
  } else if (formula == "gamma") {
    const int ds = need_int("d_s");
    const int da = need_int("d_a");
    p.value = gamma_factor(ds, da, need("lambda"));
  } else if (formula == "mixed_poly_capacity") {
    p.inputs["transition"] = transition ? 1.0 : 0.0;
    const int n = need_int("n");
    const int ds = need_int("d_s");
    const int da = need_int("d_a");
    p.value = mixed_poly_capacity(n, ds, da, need("lambda"), kind);
  } else if (formula == "mixed_exp_capacity") {
    p.inputs["transition"] = transition ? 1.0 : 0.0;
    const int n = need_int("n");
    p.value = mixed_exp_capacity(n, need("lambda"), kind);
  } else if (formula == "crosstalk_variance") {
    const auto f = fn();
    p.value = crosstalk_variance_theory(f, need_int("n"));
  } else if (formula == "crosstalk_kurtosis") {
    const auto f = fn();
    const int n = need_int("n");
    p.value = crosstalk_kurtosis_theory(f, n, need_int("p"));
  } else if (formula == "bitflip") {
    const auto f = fn();
    const int n = need_int("n");
    p.value = bitflip_probability(f, n, need_int("p")).probability;
  } else if (formula == "finite_c_capacity") {
    p.inputs["transition"] = transition ? 1.0 : 0.0;
    const auto f = fn();
    const int n = need_int("n");
    p.value = finite_c_capacity(n, need("c"), f, kind);
  } else if (formula == "hoeffding") {
    const int n = need_int("n");
    p.value = hopfield_hoeffding_bound(n, need_int("p"));
  } else if (formula == "max_degree") {
    p.value = max_degree_profile(need_int("n")).argmax;
  } else if (formula == "double_factorial") {
    p.value = static_cast<double>(double_factorial(need_int("k")));
  } else if (formula == "gaussian_tail") {
    p.value = gaussian_tail(need("x"));
  } else {
    throw UsageError("unknown formula '" + formula + "'");
  }
  return p;
}

int cmd_capacity(const CLI::App* app, const Common& common, const RuleOptions& ro,
                 ProtocolOptions po, int n, const std::string& kind, double epsilon) {
  const RuleConfig cfg = ro.build();
  po.proto.threads = common.threads;
  po.proto.validate();
  std::vector<CapacityKind> kinds;
  if (kind == "both") {
    kinds = {CapacityKind::Transition, CapacityKind::Sequence};
  } else {
    kinds = {parse_capacity_kind(kind)};
  }
  const PatternDistribution dist = epsilon > 0.0
                                       ? PatternDistribution::biased(epsilon, common.seed)
                                       : PatternDistribution::rademacher(common.seed);
  const ResultMetadata meta{"capacity", common.seed, effective_config(app)};
  const fs::path dir = output_dir(common.out);
  for (const auto k : kinds) {
    const auto est = estimate_capacity(cfg, n, k, po.proto, common.seed, dist);
    const std::string stem =
        "capacity_" + slug(cfg.describe()) + "_" + to_string(k) + "_N" + std::to_string(n) +
        "_seed" + std::to_string(common.seed);
    write_json(dir / (stem + ".json"), make_document(meta, to_json(est)));
    write_csv(dir / (stem + ".csv"), [&](std::ostream& os) { write_capacity_csv(os, est); });
    std::cout << to_string(k) << " capacity " << cfg.describe() << " N=" << n << ": mean "
              << est.mean << " sd " << est.stddev << " (theory " << est.theory << ") -> "
              << (dir / (stem + ".json")).string() << "\n";
  }
  return 0;
}

int cmd_crosstalk(const CLI::App* app, const Common& common, const RuleOptions& ro, int n, int p,
                  std::int64_t samples, int bins) {
  const RuleConfig cfg = ro.build();
  const auto stats = sample_crosstalk(cfg, n, p, samples, common.seed, bins, common.threads);
  const ResultMetadata meta{"crosstalk", common.seed, effective_config(app)};
  const fs::path dir = output_dir(common.out);
  const std::string stem = "crosstalk_" + slug(cfg.describe()) + "_N" + std::to_string(n) + "_P" +
                           std::to_string(p) + "_seed" + std::to_string(common.seed);
  write_json(dir / (stem + ".json"), make_document(meta, to_json(stats)));
  write_csv(dir / (stem + ".csv"), [&](std::ostream& os) { write_crosstalk_csv(os, stats); });
  std::cout << "term variance " << stats.term_variance << " +- " << stats.term_variance_se
            << " (theory " << stats.theory_term_variance_exact << "), excess kurtosis "
            << stats.excess_kurtosis << " (theory " << stats.theory_kurtosis << ") -> "
            << (dir / (stem + ".json")).string() << "\n";
  return 0;
}

int cmd_trace(const CLI::App* app, const Common& common, const RuleOptions& ro, int n, int p,
              int steps, double epsilon, const std::string& patterns_file, double threshold) {
  const RuleConfig cfg = ro.build();
  PatternSet ps;
  if (!patterns_file.empty()) {
    ps = read_patterns(fs::path(patterns_file));
  } else {
    if (n <= 0 || p <= 0) throw UsageError("trace needs --n and --p or --patterns");
    const PatternDistribution dist = epsilon > 0.0
                                         ? PatternDistribution::biased(epsilon, common.seed)
                                         : PatternDistribution::rademacher(common.seed);
    ps = generate_patterns(dist, n, p);
  }
  if (steps <= 0) steps = cfg.tau * (ps.n_patterns() + 2);
  const Trajectory traj = run_sequence(ps.pattern(0), ps, cfg, steps);
  const DwellReport dwell = dwell_analysis(traj, threshold);
  const ResultMetadata meta{"trace", common.seed, effective_config(app)};
  const fs::path dir = output_dir(common.out);
  const std::string stem = "trace_" + slug(cfg.describe()) + "_N" +
                           std::to_string(ps.n_neurons()) + "_P" +
                           std::to_string(ps.n_patterns()) + "_seed" + std::to_string(common.seed);
  write_json(dir / (stem + ".json"), make_document(meta, to_json(dwell)));
  write_csv(dir / (stem + ".csv"), [&](std::ostream& os) { write_trajectory_csv(os, traj); });
  std::cout << "order " << (dwell.order_correct ? "correct" : "wrong") << ", "
            << (dwell.lost ? "lost, " : "") << "dwell " << (dwell.dwell_uniform ? "uniform" : "non-uniform")
            << ", " << dwell.patterns_reached << " patterns reached -> "
            << (dir / (stem + ".json")).string() << "\n";
  return 0;
}

int cmd_bias_sweep(const CLI::App* app, const Common& common, const RuleOptions& ro,
                   ProtocolOptions po, int n, const std::string& rules, const std::string& eps,
                   const std::string& kind) {
  std::vector<RuleConfig> cfgs;
  for (const auto& spec : split(rules, ',')) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
      cfgs.push_back(ro.build_rule(spec, ro.f));
    } else {
      cfgs.push_back(ro.build_rule(spec.substr(0, colon), spec.substr(colon + 1)));
    }
  }
  if (cfgs.empty()) throw UsageError("--rules is empty");
  po.proto.threads = common.threads;
  po.proto.validate();
  const auto rows = bias_sweep(cfgs, n, parse_doubles(eps), po.proto, common.seed,
                               parse_capacity_kind(kind));
  const ResultMetadata meta{"bias-sweep", common.seed, effective_config(app)};
  const fs::path dir = output_dir(common.out);
  const std::string stem =
      "bias_sweep_N" + std::to_string(n) + "_" + kind + "_seed" + std::to_string(common.seed);
  write_json(dir / (stem + ".json"), make_document(meta, to_json(rows)));
  write_csv(dir / (stem + ".csv"), [&](std::ostream& os) { write_bias_sweep_csv(os, rows); });
  for (const auto& r : rows) {
    std::cout << r.rule << " eps=" << r.epsilon << ": mean " << r.estimate.mean << " sd "
              << r.estimate.stddev << "\n";
  }
  return 0;
}

int cmd_mnist(const CLI::App* app, const Common& common, const RuleOptions& ro,
              const std::string& images, const std::string& labels, int blocks, int threshold,
              const std::string& dumps) {
  const RuleConfig cfg = ro.build();
  const auto imgs = load_idx_images(images);
  const auto labs = load_idx_labels(labels);
  const auto seq = build_digit_sequence(imgs, labs, blocks, common.seed, threshold);
  const std::vector<int> dump_times = parse_ints(dumps);
  const RecallReport rep = run_recall(seq.patterns, cfg, -1, dump_times);

  const ResultMetadata meta{"mnist", common.seed, effective_config(app)};
  const fs::path dir = output_dir(common.out);
  const std::string stem = "mnist_" + slug(cfg.describe()) + "_seed" + std::to_string(common.seed);
  Json dump_json = Json::array();
  for (const auto& [t, s] : rep.dumps) dump_json.push_back({{"t", t}, {"state", s.to_bipolar()}});
  Json result = {{"n_neurons", seq.patterns.n_neurons()},
                 {"n_patterns", seq.patterns.n_patterns()},
                 {"threshold", seq.threshold},
                 {"steps", rep.steps},
                 {"exact_steps", rep.exact_steps},
                 {"accuracy", rep.accuracy},
                 {"repeated_state", rep.repeated_state},
                 {"first_repeat_t", rep.first_repeat_t},
                 {"repeat_of", rep.repeat_of},
                 {"dumps", dump_json}};
  write_json(dir / (stem + ".json"), make_document(meta, result));
  write_csv(dir / (stem + ".csv"),
            [&](std::ostream& os) { write_recall_csv(os, rep, seq.labels); });
  std::cout << "transition accuracy " << 100.0 * rep.accuracy << "% over " << rep.steps
            << " steps" << (rep.repeated_state ? ", repeated state at t=" + std::to_string(rep.first_repeat_t) : "")
            << " -> " << (dir / (stem + ".json")).string() << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"seqmem: sequential associative memory experiments"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  Common common;
  RuleOptions ro;
  ProtocolOptions po;

  int n = 0;
  int p = 0;
  std::string kind = "transition";
  double epsilon = 0.0;
  std::int64_t samples = 1000000;
  int bins = 100;
  int steps = 0;
  std::string patterns_file;
  double threshold = 0.9;
  std::string rules = "densenet:poly:2,gpi:poly:2";
  std::string eps = "0,0.2,0.4,0.6";
  std::string images;
  std::string labels;
  int blocks = 1000;
  int pixel_threshold = 128;
  std::string dumps = "1,102,203,304";
  std::string formula;
  std::map<std::string, double> theory_inputs;

  auto* cap = app.add_subcommand("capacity", "transition and/or sequence capacity search");
  common.attach(cap);
  ro.attach(cap);
  po.attach(cap);
  cap->add_option("--n", n, "network size")->required();
  cap->add_option("--kind", kind, "transition|sequence|both");
  cap->add_option("--epsilon", epsilon, "pattern bias (0 = Rademacher)");

  auto* xt = app.add_subcommand("crosstalk", "sample the crosstalk distribution");
  common.attach(xt);
  ro.attach(xt);
  xt->add_option("--n", n, "network size")->required();
  xt->add_option("--p", p, "sequence length")->required();
  xt->add_option("--samples", samples, "number of samples");
  xt->add_option("--bins", bins, "histogram bins");

  auto* tr = app.add_subcommand("trace", "run a sequence and analyse overlaps and dwell times");
  common.attach(tr);
  ro.attach(tr);
  tr->add_option("--n", n, "network size");
  tr->add_option("--p", p, "sequence length");
  tr->add_option("--steps", steps, "time steps (0 = tau * (P + 2))");
  tr->add_option("--epsilon", epsilon, "pattern bias (0 = Rademacher)");
  tr->add_option("--patterns", patterns_file, "packed pattern file instead of random patterns");
  tr->add_option("--threshold", threshold, "overlap threshold for dwell segmentation");

  auto* bs = app.add_subcommand("bias-sweep", "capacity against pattern bias");
  common.attach(bs);
  ro.attach(bs);
  po.attach(bs);
  bs->add_option("--n", n, "network size")->required();
  bs->add_option("--rules", rules, "comma list of rule[:f] entries");
  bs->add_option("--eps", eps, "comma list of bias values in [0, 1)");
  bs->add_option("--kind", kind, "transition|sequence");

  auto* mn = app.add_subcommand("mnist", "recall of the binarized MNIST digit sequence");
  common.attach(mn);
  ro.attach(mn);
  mn->add_option("--images", images, "IDX image file")->required();
  mn->add_option("--labels", labels, "IDX label file")->required();
  mn->add_option("--blocks", blocks, "number of 0..9 blocks");
  mn->add_option("--pixel-threshold", pixel_threshold, "binarization threshold");
  mn->add_option("--dump", dumps, "comma list of time steps whose states are saved");

  auto* th = app.add_subcommand("theory", "evaluate a closed-form prediction");
  th->add_option("--formula", formula,
                 "beta|poly_capacity|exp_capacity|gamma|mixed_poly_capacity|mixed_exp_capacity|"
                 "crosstalk_variance|crosstalk_kurtosis|bitflip|finite_c_capacity|hoeffding|"
                 "max_degree|double_factorial|gaussian_tail")
      ->required();
  th->add_option("--kind", kind, "transition|sequence");
  th->add_option("--config", "key=value configuration file");
  for (const char* key : {"n", "d", "d_s", "d_a", "lambda", "p", "c", "k", "x"}) {
    th->add_option_function<double>(
        std::string("--") + key, [&theory_inputs, key](double v) { theory_inputs[key] = v; },
        "formula input");
  }
  th->add_flag_function(
      "--exp", [&theory_inputs](std::int64_t) { theory_inputs["exp"] = 1.0; },
      "use the exponential interaction function");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cap->parsed()) return cmd_capacity(cap, common, ro, po, n, kind, epsilon);
    if (xt->parsed()) return cmd_crosstalk(xt, common, ro, n, p, samples, bins);
    if (tr->parsed()) return cmd_trace(tr, common, ro, n, p, steps, epsilon, patterns_file, threshold);
    if (bs->parsed()) return cmd_bias_sweep(bs, common, ro, po, n, rules, eps, kind);
    if (mn->parsed()) {
      return cmd_mnist(mn, common, ro, images, labels, blocks, pixel_threshold, dumps);
    }
    if (th->parsed()) {
      const auto pred = evaluate_theory(formula, theory_inputs, parse_capacity_kind(kind));
      std::cout << to_json(pred).dump(2) << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace seqmem
