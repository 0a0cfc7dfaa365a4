#pragma once

#include "argo/data/series.hpp"
#include "argo/eval/bootstrap.hpp"
#include "argo/eval/metric_table.hpp"
#include "argo/io/config.hpp"
#include "argo/models/retrospective.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace argo::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitConvergence = 4;

/// ARGO against one other method over one period.
struct EfficiencyRow {
    std::string benchmark;
    std::string period;
    eval::EfficiencyEstimate estimate;
};

/// Everything `evaluate` computes before writing.
struct Evaluation {
    data::WeekRange range;
    std::vector<eval::Period> periods;
    data::WeeklySeries targets;  ///< finalized values, percent
    std::vector<models::NowcastSeries> series;
    eval::MetricTable metrics;
    std::vector<EfficiencyRow> efficiency;
};

[[nodiscard]] models::Dataset load_dataset(const io::RunConfig& config);

/// Methods the config asks for, or every method the inputs allow.
[[nodiscard]] std::vector<models::Method> selected_methods(const io::RunConfig& config);

/// Evaluation range implied by the data and the warm-up of the selected methods.
[[nodiscard]] data::WeekRange evaluation_range(const io::RunConfig& config, const models::Dataset& dataset);

/// Runs every method over the evaluation range and computes the tables.
/// With `with_bootstrap` false the efficiency rows are left empty.
[[nodiscard]] Evaluation run_evaluation(const io::RunConfig& config, const models::Dataset& dataset,
                                        bool with_bootstrap = true);

/// Mean and sample sd of `values`, computed around the first value
/// so that identical inputs give a standard deviation of exactly 0.
struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};
[[nodiscard]] MeanSd mean_sd(const std::vector<double>& values);

/// Command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace argo::cli
