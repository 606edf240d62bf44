#pragma once

#include "mvsched/analysis.hpp"
#include "mvsched/benchgen.hpp"
#include "mvsched/extensibility.hpp"
#include "mvsched/model.hpp"
#include "mvsched/pipeline.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>

namespace mvsched {

using Json = nlohmann::json;

Json read_json_file(const std::filesystem::path& path);
/// Two-space indented, keys sorted, trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& value);

NetworkConfig network_from_json(const Json& j);
Json to_json(const NetworkConfig& network);

/// Accepts cycle units (period_cycles, release_cycle, deadline_cycle) or
/// milliseconds (period_ms, release_ms, deadline_ms), which must be whole
/// multiples of the cycle. A deadline in ms marks the end of the last
/// admissible cycle. Missing windows span the whole period.
Instance instance_from_json(const Json& j);
Json to_json(const Instance& instance);
Instance load_instance(const std::filesystem::path& path);

Multischedule multischedule_from_json(const Json& j);
Json to_json(const Multischedule& schedule, std::optional<std::uint64_t> seed = std::nullopt);
Multischedule load_multischedule(const std::filesystem::path& path);

/// {"cells": [{"period_cycles", "payload_bits", "probability"}]}
ContingencyTable contingency_from_json(const Json& j);
Json to_json(const ContingencyTable& table);

/// Distributions map values to weights: {"1": 0.05, "2": 0.15}. A
/// "distribution_file" entry is resolved against `base_dir`.
GeneratorParams params_from_json(const Json& j, const std::filesystem::path& base_dir = {});
GeneratorParams load_params(const std::filesystem::path& path);

Json to_json(const ValidationReport& report);
Json to_json(const PipelineResult& result);
Json to_json(const IncrementalStats& stats);

}  // namespace mvsched
