#pragma once

#include "csr/experiment.hpp"

#include <json.hpp>

#include <filesystem>

namespace csr {

// JSON mapping of the configuration types. Missing keys keep their
// defaults, so `{}` reproduces the reference evaluation setup.

nlohmann::json to_json(const Topology& topo);
Topology topology_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ScenarioScript& script);
ScenarioScript script_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Hyperparams& theta);
Hyperparams hyperparams_from_json(const nlohmann::json& j, Hyperparams base = {});

nlohmann::json to_json(const ChannelParams& p);
ChannelParams channel_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TxopConfig& c);
TxopConfig txop_from_json(const nlohmann::json& j);

/// `base_dir` resolves relative paths (MCS table file).
ExperimentConfig experiment_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json to_json(const ExperimentConfig& cfg);

ExperimentConfig load_experiment_config(const std::filesystem::path& path);
nlohmann::json load_json(const std::filesystem::path& path);

/// Tuning spec: {"experiment": {...}, "scenarios": n, "eval_seeds": [...],
/// "ranges": {"ucb_c": [lo, hi, "log"], ...}}.
TuneSpec tune_spec_from_json(const nlohmann::json& j, Algorithm algorithm,
                             const std::filesystem::path& base_dir = {});

} // namespace csr
