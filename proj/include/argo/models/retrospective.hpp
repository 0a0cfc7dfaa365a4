#pragma once

#include "argo/data/series.hpp"
#include "argo/data/vintage.hpp"
#include "argo/models/argo_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace argo::models {

/// Which history the weekly refits see.
enum class VintageMode {
    finalized,     ///< finalized values truncated at t-1
    as_published,  ///< the revision triangle as it stood in week t
};

[[nodiscard]] std::string to_string(VintageMode m);
[[nodiscard]] VintageMode parse_vintage_mode(const std::string& s);

enum class Method { argo, exo_only, ar3, gft_ar3, naive };

[[nodiscard]] std::string to_string(Method m);
[[nodiscard]] Method parse_method(const std::string& s);

/// Inputs of a retrospective study. The panel is on the frequency scale.
struct Dataset {
    data::VintageSeries ili;
    data::SearchPanel panel;
    std::optional<data::WeeklySeries> gft;
};

struct NowcastEntry {
    data::EpiWeek week;
    double estimate = 0.0;  ///< proportion in (0, 1)
    /// Penalized methods only.
    std::optional<solver::FitResult> fit;
    std::vector<std::string> active_terms;
    /// History weeks that were absent from the as-of view and filled with finalized values.
    std::vector<data::EpiWeek> filled_weeks;
};

struct NowcastSeries {
    Method method = Method::argo;
    VintageMode mode = VintageMode::finalized;
    std::size_t lags = 0;
    std::vector<std::string> terms;
    std::vector<NowcastEntry> entries;

    /// Estimates on the percent scale, aligned to the entries' weeks.
    [[nodiscard]] data::WeeklySeries estimates_percent() const;
};

struct RetrospectiveOptions {
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

/// Warm-up weeks `method` needs before the first nowcast.
[[nodiscard]] std::size_t warm_up_weeks(Method method, const ModelSpec& spec);

/**
 * Rolling out-of-sample nowcasts for every week of `range`.
 *
 * Week t is estimated from history up to t-1 (finalized, or as published in
 * week t) and search data up to t. Weeks may be processed in parallel; each
 * reads only immutable inputs and its own derived seed, and the output is
 * ordered by week. Throws DataError if the data do not cover the range plus
 * the warm-up.
 */
[[nodiscard]] NowcastSeries run_retrospective(const Dataset& dataset, const data::WeekRange& range,
                                              const ModelSpec& spec, VintageMode mode, Method method,
                                              const RetrospectiveOptions& options = {});

/// Per-week coefficients for heat-map export: N lag columns, then K term columns.
struct CoefficientTrajectory {
    std::vector<data::EpiWeek> weeks;
    std::vector<std::string> columns;
    Eigen::MatrixXd values;  ///< weeks x columns, original (unstandardized) scale
    std::vector<std::size_t> active_count;  ///< nonzero entries per row
};

/// Throws DataError if the series carries no fitted coefficients.
[[nodiscard]] CoefficientTrajectory coefficient_trajectory(const NowcastSeries& series);

}  // namespace argo::models
