#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "keyforge/bench.hpp"
#include "keyforge/corpus.hpp"
#include "keyforge/curvature.hpp"
#include "keyforge/distance.hpp"
#include "keyforge/embed.hpp"
#include "keyforge/layout.hpp"
#include "keyforge/markov.hpp"
#include "keyforge/partition.hpp"

namespace keyforge {

using Json = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);
Json read_json_file(const std::filesystem::path& path);
/// Two-space indented JSON with a trailing newline.
std::string dump_json(const Json& j);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

Json to_json(const BigramCounts& counts);
BigramCounts counts_from_json(const Json& j);

Json to_json(const TransitionModel& model);
/// Validates the model invariants after reading.
TransitionModel model_from_json(const Json& j);

Json to_json(const OptimizerConfig& cfg);
OptimizerConfig config_from_json(const Json& j);

Json to_json(const DistanceMatrix& d);
DistanceMatrix distances_from_json(const Json& j);

Json to_json(const Embedding2D& emb);
Embedding2D embedding_from_json(const Json& j);

Json to_json(const Partition& p, double objective);
Partition partition_from_json(const Json& j);

Json to_json(const KeyboardLayout& layout);
KeyboardLayout layout_from_json(const Json& j);

Json to_json(const BenchReport& report);
Json to_json(const EllipseSpec& e);

/// letter,k,kappa_min,kappa_max,gauss rows ordered by (k, letter).
std::string curvature_csv(const CurvatureReport& report);
/// letter,gauss_mean rows in alphabet order.
std::string curvature_mean_csv(const CurvatureReport& report);

}  // namespace keyforge
