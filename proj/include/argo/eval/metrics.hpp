#pragma once

#include "argo/data/series.hpp"

#include <span>
#include <string>
#include <vector>

namespace argo::eval {

// Accuracy of estimates against targets, both on the percent scale of ILI activity.
// All functions take aligned spans of equal length.

[[nodiscard]] double rmse(std::span<const double> estimates, std::span<const double> targets);
[[nodiscard]] double mae(std::span<const double> estimates, std::span<const double> targets);
/// mean |estimate - target| / target; throws DomainError on a zero target.
[[nodiscard]] double mape(std::span<const double> estimates, std::span<const double> targets);
/// Pearson sample correlation; needs >= 3 points and non-zero variances.
[[nodiscard]] double correlation(std::span<const double> estimates, std::span<const double> targets);
/// Correlation of first differences; needs >= 3 points.
[[nodiscard]] double correlation_of_increment(std::span<const double> estimates, std::span<const double> targets);

/// MSE of errors2 over MSE of errors1: > 1 means method 1 is more accurate.
/// Throws DomainError when errors1 is identically zero.
[[nodiscard]] double relative_efficiency(std::span<const double> errors1, std::span<const double> errors2);

enum class Metric { rmse, mae, mape, correlation, correlation_of_increment };

inline constexpr Metric kAllMetrics[] = {Metric::rmse, Metric::mae, Metric::mape, Metric::correlation,
                                         Metric::correlation_of_increment};

[[nodiscard]] std::string to_string(Metric m);
/// Error metrics are better when smaller; correlations when larger.
[[nodiscard]] bool lower_is_better(Metric m);
[[nodiscard]] double compute(Metric m, std::span<const double> estimates, std::span<const double> targets);

/// Named inclusive range of weeks.
struct Period {
    std::string name;
    data::EpiWeek start;
    data::EpiWeek end;

    /// Weeks overlapping the calendar range [first_day, last_day].
    static Period from_dates(std::string name, data::Date first_day, data::Date last_day);
};

/// Periods with explicit dates: the whole study, the 2009 off-season H1N1 outbreak,
/// and the regular seasons 2010-11 through 2014-15 (week 40 to week 20).
[[nodiscard]] std::vector<Period> preset_periods();

/// Estimates and targets restricted to `period`; both series must cover it.
struct PeriodSlice {
    std::vector<double> estimates;
    std::vector<double> targets;
};
[[nodiscard]] PeriodSlice slice_period(const data::WeeklySeries& estimates, const data::WeeklySeries& targets,
                                       const Period& period);

}  // namespace argo::eval
