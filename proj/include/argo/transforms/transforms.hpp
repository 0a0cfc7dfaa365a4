#pragma once

#include "argo/data/series.hpp"

#include <span>
#include <vector>

namespace argo::transforms {

/// Constants of the variable transformations.
struct TransformParams {
    /// Offset added to search frequencies before taking logs (Trends values can be 0).
    double delta = 0.5;
    /// ILI activity is stored in percent and divided by this exactly once before logit.
    double percent_divisor = 100.0;

    void validate() const;
};

/// ln(p / (1 - p)); throws DomainError unless 0 < p < 1.
[[nodiscard]] double logit(double p);

/// 1 / (1 + exp(-y)), evaluated without overflow and clamped to the open interval (0, 1).
[[nodiscard]] double inverse_logit(double y) noexcept;

/// ln(x + delta); throws DomainError for x < 0.
[[nodiscard]] double log_search(double x, const TransformParams& params = {});

/// Affine map of a column onto [0, 100] (minimum to 0, maximum to 100).
/// Throws DomainError when the column has fewer than two distinct values.
[[nodiscard]] std::vector<double> rescale_correlate(std::span<const double> column);

/// Percent-unit ILI series to logit scale.
[[nodiscard]] data::WeeklySeries logit_series(const data::WeeklySeries& percent,
                                              const TransformParams& params = {});

/// Frequency-scale panel to log scale.
[[nodiscard]] data::SearchPanel log_panel(const data::SearchPanel& panel, const TransformParams& params = {});

/// Rescales every column of a correlate panel onto [0, 100] over the panel's full span.
[[nodiscard]] Eigen::MatrixXd rescale_columns(const Eigen::MatrixXd& standardized);

}  // namespace argo::transforms
