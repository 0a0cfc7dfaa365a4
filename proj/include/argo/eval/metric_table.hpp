#pragma once

#include "argo/data/series.hpp"
#include "argo/eval/metrics.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace argo::eval {

/// Percent-scale estimates of one method.
struct MethodEstimates {
    std::string method;
    data::WeeklySeries estimates;
};

struct MetricCell {
    std::string method;
    std::string period;
    Metric metric = Metric::rmse;
    double value = 0.0;  ///< absolute value on the percent scale
    /// Ratio to the reference method's value (error metrics only, when a reference is present).
    std::optional<double> relative;
    bool best = false;
};

/**
 * @brief All five metrics for every (method, period) pair.
 *
 * Error metrics are also reported relative to the reference (naive) method,
 * whose absolute values are kept separately so they can be printed next to its
 * relative entries of 1.
 */
struct MetricTable {
    std::vector<std::string> methods;
    std::vector<std::string> periods;
    std::optional<std::string> reference;
    std::vector<MetricCell> cells;  ///< ordered by method, period, metric

    [[nodiscard]] const MetricCell& at(const std::string& method, const std::string& period, Metric metric) const;
    /// Absolute value of the reference method; throws if there is no reference.
    [[nodiscard]] double reference_value(const std::string& period, Metric metric) const;
};

/**
 * Computes the table. `reference` names the method errors are expressed against;
 * pass an empty string for absolute values only. Ties for best are all flagged.
 * Throws DataError if a method does not cover a period, and DomainError if the
 * reference has a zero error in some period.
 */
[[nodiscard]] MetricTable build_metric_table(std::span<const MethodEstimates> methods,
                                             const data::WeeklySeries& targets, std::span<const Period> periods,
                                             const std::string& reference = "naive");

/// Table cell text: a value to three decimals with trailing zeros dropped, followed by
/// the reference's absolute value in parentheses when given ("1 (0.348)", "0.608").
[[nodiscard]] std::string format_cell(double value, std::optional<double> absolute = std::nullopt);

struct ParsedCell {
    double value = 0.0;
    std::optional<double> absolute;
};
/// Inverse of format_cell; throws DataError on malformed text.
[[nodiscard]] ParsedCell parse_cell(const std::string& text);

}  // namespace argo::eval
