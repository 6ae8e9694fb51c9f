#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqmem/datasets.hpp"
#include "seqmem/harness.hpp"
#include "seqmem/theory.hpp"

namespace seqmem {

using Json = nlohmann::json;

/// Library version string embedded in every result file.
std::string version_string();

/// Reproducibility block: version, seed and the full key=value configuration.
struct ResultMetadata {
  std::string command;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> config;
};

Json to_json(const ResultMetadata& meta);
Json to_json(const CapacityEstimate& est);
Json to_json(const Histogram& h);
Json to_json(const CrosstalkStats& stats);
Json to_json(const std::vector<BiasSweepRow>& rows);
Json to_json(const DwellReport& report);
Json to_json(const TheoryPrediction& pred);

/// {"metadata": ..., "result": ...}
Json make_document(const ResultMetadata& meta, Json result);

/// Two-space indented JSON followed by a newline.
void write_json(const std::filesystem::path& path, const Json& doc);

// Flat CSV tables. Columns are documented in docs/formats.md.
void write_capacity_csv(std::ostream& os, const CapacityEstimate& est);
void write_crosstalk_csv(std::ostream& os, const CrosstalkStats& stats);
void write_bias_sweep_csv(std::ostream& os, const std::vector<BiasSweepRow>& rows);
void write_recall_csv(std::ostream& os, const RecallReport& report,
                      const std::vector<int>& labels = {});

void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace seqmem
