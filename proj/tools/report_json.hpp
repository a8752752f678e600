#pragma once

#include <json.hpp>

#include "gnewton/analysis.hpp"
#include "gnewton/experiments.hpp"

namespace gnewton::cli {

nlohmann::json to_json(const VecN& v);
nlohmann::json to_json(const Box& box);
nlohmann::json to_json(const SolveConfig& cfg);
nlohmann::json to_json(const SolveTrace& trace);
nlohmann::json to_json(const BenchReport& report);
nlohmann::json to_json(const LambdaEstimate& est);
nlohmann::json to_json(const SpectralVectors& sv);

/// Two-space indented dump with a trailing newline.
std::string dump(const nlohmann::json& j);
void write_json(const nlohmann::json& j, const std::string& path);

}  // namespace gnewton::cli
