#pragma once

#include "argo/data/series.hpp"
#include "argo/eval/bootstrap.hpp"
#include "argo/eval/metrics.hpp"
#include "argo/models/argo_model.hpp"
#include "argo/models/retrospective.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace argo::io {

struct PanelInput {
    std::filesystem::path path;
    data::SearchSource source = data::SearchSource::trends;
};

/**
 * @brief Everything an evaluation run needs.
 *
 * Relative paths in the file are resolved against the directory holding it.
 * The seed is mandatory; nothing is seeded from the clock.
 */
struct RunConfig {
    std::filesystem::path ili;                     ///< finalized series
    std::optional<std::filesystem::path> revisions;  ///< revision archive (absent: no revisions)
    std::vector<PanelInput> panels;                ///< concatenated in time, in order
    std::optional<std::filesystem::path> gft;

    models::ModelSpec model;
    models::VintageMode vintage_mode = models::VintageMode::finalized;
    std::vector<models::Method> methods;  ///< empty: every method the inputs allow

    std::optional<data::Date> eval_start;  ///< default: first week with enough warm-up
    std::optional<data::Date> eval_end;    ///< default: last week of the data
    std::vector<eval::Period> periods;     ///< empty: a single period "whole" over the evaluation range

    std::uint64_t seed = 0;
    eval::BootstrapConfig bootstrap;
    std::optional<std::filesystem::path> output;
    unsigned threads = 1;

    /// Throws ConfigError naming the first missing input file or malformed setting.
    void validate() const;
};

[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);
[[nodiscard]] RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir);

/// Resolved configuration, for run metadata.
[[nodiscard]] nlohmann::json to_json(const RunConfig& config);

}  // namespace argo::io
