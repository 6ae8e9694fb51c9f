#include "seqmem/results.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#ifndef SEQMEM_VERSION
#define SEQMEM_VERSION "unknown"
#endif

namespace seqmem {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

Json branch_json(const BranchStats& b) {
  return {{"count", b.count}, {"weight", b.weight}, {"mean", b.mean}, {"variance", b.variance}};
}

}  // namespace

std::string version_string() { return SEQMEM_VERSION; }

Json to_json(const ResultMetadata& meta) {
  Json config = Json::object();
  for (const auto& [k, v] : meta.config) config[k] = v;
  return {{"version", version_string()},
          {"command", meta.command},
          {"seed", meta.seed},
          {"config", config}};
}

Json to_json(const CapacityEstimate& est) {
  std::vector<int> floors(est.floor_reached.begin(), est.floor_reached.end());
  return {{"rule", est.rule},
          {"kind", to_string(est.kind)},
          {"n_neurons", est.n_neurons},
          {"seed", est.seed},
          {"distribution", est.distribution},
          {"theory", est.theory},
          {"capacities", est.capacities},
          {"starting_p", est.starting_p},
          {"rounds", est.rounds},
          {"floor_reached", floors},
          {"mean", est.mean},
          {"stddev", est.stddev}};
}

Json to_json(const Histogram& h) { return {{"edges", h.edges}, {"counts", h.counts}}; }

Json to_json(const CrosstalkStats& s) {
  Json j = {{"rule", s.rule},
            {"n_neurons", s.n_neurons},
            {"n_patterns", s.n_patterns},
            {"n_samples", s.n_samples},
            {"seed", s.seed},
            {"empirical",
             {{"mean", s.mean},
              {"variance", s.variance},
              {"excess_kurtosis", s.excess_kurtosis},
              {"term_variance", s.term_variance},
              {"term_variance_se", s.term_variance_se}}},
            {"theory",
             {{"term_variance", s.theory_term_variance},
              {"term_variance_exact", s.theory_term_variance_exact},
              {"excess_kurtosis", s.theory_kurtosis}}},
            {"histogram", to_json(s.histogram)},
            {"bimodality_coefficient", s.bimodality_coefficient},
            {"histogram_modes", s.histogram_modes}};
  if (s.mixed) {
    j["branches"] = {{"minus", branch_json(s.minus)}, {"plus", branch_json(s.plus)}};
    j["theory"]["branch_mean_minus"] = s.mixed_theory.mean_minus;
    j["theory"]["branch_mean_plus"] = s.mixed_theory.mean_plus;
    j["theory"]["branch_variance"] = s.mixed_theory.variance;
  }
  return j;
}

Json to_json(const std::vector<BiasSweepRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"rule", r.rule}, {"epsilon", r.epsilon}, {"estimate", to_json(r.estimate)}});
  }
  return arr;
}

Json to_json(const DwellReport& r) {
  Json segs = Json::array();
  for (const auto& s : r.segments) {
    segs.push_back({{"pattern", s.pattern}, {"start", s.start}, {"length", s.length}});
  }
  return {{"segments", segs},
          {"lost", r.lost},
          {"order_correct", r.order_correct},
          {"dwell_uniform", r.dwell_uniform},
          {"patterns_reached", r.patterns_reached}};
}

Json to_json(const TheoryPrediction& p) {
  Json inputs = Json::object();
  for (const auto& [k, v] : p.inputs) inputs[k] = v;
  return {{"formula_id", p.formula_id}, {"inputs", inputs}, {"value", p.value}};
}

Json make_document(const ResultMetadata& meta, Json result) {
  return {{"metadata", to_json(meta)}, {"result", std::move(result)}};
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

void write_capacity_csv(std::ostream& os, const CapacityEstimate& est) {
  os << "rule,kind,n,seed,distribution,repeat,capacity,starting_p,rounds,floor_reached,theory\n";
  for (std::size_t r = 0; r < est.capacities.size(); ++r) {
    os << est.rule << ',' << to_string(est.kind) << ',' << est.n_neurons << ',' << est.seed << ','
       << est.distribution << ',' << r << ',' << est.capacities[r] << ',' << est.starting_p[r]
       << ',' << est.rounds[r] << ',' << (est.floor_reached[r] ? 1 : 0) << ',' << fmt(est.theory)
       << '\n';
  }
}

void write_crosstalk_csv(std::ostream& os, const CrosstalkStats& s) {
  os << "bin,lower,upper,count\n";
  for (std::size_t b = 0; b < s.histogram.counts.size(); ++b) {
    os << b << ',' << fmt(s.histogram.edges[b]) << ',' << fmt(s.histogram.edges[b + 1]) << ','
       << s.histogram.counts[b] << '\n';
  }
}

void write_bias_sweep_csv(std::ostream& os, const std::vector<BiasSweepRow>& rows) {
  os << "rule,epsilon,kind,n,repeat,capacity,mean,stddev\n";
  for (const auto& row : rows) {
    const auto& e = row.estimate;
    for (std::size_t r = 0; r < e.capacities.size(); ++r) {
      os << row.rule << ',' << fmt(row.epsilon) << ',' << to_string(e.kind) << ',' << e.n_neurons
         << ',' << r << ',' << e.capacities[r] << ',' << fmt(e.mean) << ',' << fmt(e.stddev)
         << '\n';
    }
  }
}

void write_recall_csv(std::ostream& os, const RecallReport& report,
                      const std::vector<int>& labels) {
  os << "t,overlap,exact,label\n";
  for (std::size_t t = 0; t < report.overlap_with_target.size(); ++t) {
    const double m = report.overlap_with_target[t];
    os << t << ',' << fmt(m) << ',' << (m == 1.0 ? 1 : 0) << ',';
    if (!labels.empty()) os << labels[t % labels.size()];
    os << '\n';
  }
}

}  // namespace seqmem
