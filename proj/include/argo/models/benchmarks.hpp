#pragma once

#include "argo/data/series.hpp"
#include "argo/models/argo_model.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace argo::models {

/// Least-squares fit with an unpenalized intercept.
struct OlsFit {
    double intercept = 0.0;
    Eigen::VectorXd coefficients;
    bool ridge_fallback = false;  ///< design was rank deficient after dropping constant columns
};

/**
 * OLS of y on the columns of x. Columns that are constant over the sample get a
 * zero coefficient (the intercept absorbs them); if the remaining centered design
 * is still rank deficient, a ridge of 1e-8 is added to its normal equations.
 */
[[nodiscard]] OlsFit fit_ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

/// Last week's value as visible at t, as a proportion. Throws DataError if week t-1 is absent.
[[nodiscard]] double benchmark_naive(const data::WeeklySeries& history_percent, const data::EpiWeek& t);

/**
 * AR(3) with intercept fit by OLS over the `spec.window` weeks before t, then a
 * one-step prediction. Fit on the percent scale by default (logit scale when
 * spec.benchmark_scale says so). Result is a proportion in (0, 1).
 */
[[nodiscard]] double benchmark_ar3(const data::WeeklySeries& history_percent, const data::EpiWeek& t,
                                   const ModelSpec& spec);

/// AR(3) plus an external estimate series as exogenous regressor, using its value at t for the prediction.
[[nodiscard]] double benchmark_gft_ar3(const data::WeeklySeries& history_percent, const data::WeeklySeries& gft,
                                       const data::EpiWeek& t, const ModelSpec& spec);

/// The penalized model with the lag group removed: search terms only.
[[nodiscard]] WeekFit fit_week_exo_only(const data::WeeklySeries& y_logit, const data::SearchPanel& x_log,
                                        const data::EpiWeek& t, const ModelSpec& spec, std::uint64_t global_seed);

/// Proportion estimate of the search-terms-only model.
[[nodiscard]] double benchmark_exo_only(const data::WeeklySeries& y_logit, const data::SearchPanel& x_log,
                                        const data::EpiWeek& t, const ModelSpec& spec, std::uint64_t global_seed);

}  // namespace argo::models
