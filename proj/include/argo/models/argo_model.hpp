#pragma once

#include "argo/data/series.hpp"
#include "argo/solver/cross_validation.hpp"
#include "argo/solver/design.hpp"
#include "argo/solver/lasso.hpp"
#include "argo/transforms/transforms.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace argo::models {

/// Scale on which the OLS autoregressive benchmarks are fit.
enum class BenchmarkScale { percent, logit };

/// Configuration of the rolling penalized autoregression and its benchmarks.
struct ModelSpec {
    std::size_t lags = 52;     ///< autoregressive lags N
    std::size_t window = 104;  ///< training rows per weekly refit
    solver::Regime regime = solver::Regime::same_l1;
    transforms::TransformParams transform;
    solver::GridConfig cv;
    solver::SolverOptions solver;
    BenchmarkScale benchmark_scale = BenchmarkScale::percent;

    /// window > lags and window >= 2 * folds; throws ConfigError.
    void validate() const;
};

/// Seed of the weekly cross-validation for week t.
[[nodiscard]] std::uint64_t week_seed(std::uint64_t global_seed, const data::EpiWeek& t);

/**
 * Training rows for a nowcast of week t: one row per week s in [t-window, t-1],
 * with response y_s, lag block (y_{s-1}, ..., y_{s-N}) and the panel row X_s.
 * Columns: lags ascending, then terms in panel order. Lags count rows of the
 * weekly sequence, never calendar arithmetic.
 *
 * @throws DataError when y_logit does not reach back window + N weeks before t,
 *         or the panel does not cover the window.
 */
[[nodiscard]] solver::DesignMatrix build_training_design(const data::WeeklySeries& y_logit,
                                                         const data::SearchPanel& x_log, const data::EpiWeek& t,
                                                         const ModelSpec& spec);

/// (y_{t-1}, ..., y_{t-N}).
[[nodiscard]] Eigen::VectorXd lag_vector(const data::WeeklySeries& y_logit, const data::EpiWeek& t, std::size_t lags);

/// Result of one weekly refit.
struct WeekFit {
    data::EpiWeek week;
    std::uint64_t seed = 0;
    solver::CvResult cv;
    solver::FitResult fit;
};

/// Cross-validates the regime's hyperparameters on the training window ending at t-1, then fits.
[[nodiscard]] WeekFit fit_week(const data::WeeklySeries& y_logit, const data::SearchPanel& x_log,
                               const data::EpiWeek& t, const ModelSpec& spec, std::uint64_t global_seed);

/// inverse_logit(intercept + alpha . y_lags + beta . x_t); throws DataError on dimension mismatch.
[[nodiscard]] double nowcast(const solver::FitResult& fit, const Eigen::VectorXd& y_lags, const Eigen::VectorXd& x_t);

}  // namespace argo::models
