#pragma once

#include "argo/solver/design.hpp"
#include "argo/solver/lasso.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace argo::solver {

enum class FoldStrategy {
    shuffled,    ///< seeded random permutation, dealt round-robin into folds
    contiguous,  ///< consecutive blocks of observations
};

/// Hyperparameter grid and fold layout.
struct GridConfig {
    int folds = 10;
    int points_1d = 30;       ///< grid size for one free hyperparameter
    int points_2d = 15;       ///< per-axis size for two free hyperparameters
    /// Smallest L1 grid value relative to lambda_max when n > p.
    double min_ratio = 1e-4;
    /// Same when a fold's training rows do not exceed p. Near interpolation coordinate descent needs of order
    /// 1e5 sweeps per grid point, and such fits are never selected in practice.
    double min_ratio_underdetermined = 1e-2;
    /// Largest L2 weight. Ridge has no all-zero threshold, so the L2 axis is
    /// dimensionless on standardized data: l2_max down to l2_max * l2_min_ratio.
    double l2_max = 1e3;
    double l2_min_ratio = 1e-4;
    FoldStrategy fold_strategy = FoldStrategy::shuffled;

    void validate() const;
};

struct CvPoint {
    PenaltySpec spec;
    double mean_error = 0.0;  ///< mean over folds of held-out mean squared error
    double std_error = 0.0;   ///< sample sd of fold errors / sqrt(folds)
    bool restricted = false;  ///< lies in the regime's restricted sub-grid (diagonal, or eta = 0)
    bool within_one_se = false;
};

struct CvTable {
    std::vector<CvPoint> points;  ///< in evaluation order: larger penalties first
    std::size_t selected = 0;
    double lambda_max = 0.0;
    /// Two-parameter regimes: whether the best restricted point is within one
    /// standard error of the global minimum. Empty for one-parameter regimes.
    std::optional<bool> restricted_within_one_se;
};

/// Hyperparameter grid in evaluation order; rows share the outer
/// hyperparameter and warm starts run along a row.
struct PenaltyGrid {
    std::vector<PenaltySpec> specs;
    std::vector<bool> restricted;
    std::size_t row_length = 0;
};
struct CvResult {
    PenaltySpec selected;
    CvTable table;
    PenaltyGrid grid;
};

/// Fold index (0..folds-1) of every observation.
[[nodiscard]] std::vector<int> fold_assignment(std::size_t n, int folds, FoldStrategy strategy, std::uint64_t seed);

/// Grid for `regime`, from lambda_max (L1 axes) or l2_max (L2 axes) downwards.
/// `underdetermined` selects min_ratio_underdetermined for the L1 axes.
[[nodiscard]] PenaltyGrid penalty_grid(double lambda_max, Regime regime, const GridConfig& config,
                                       bool underdetermined = false);

/**
 * K-fold cross-validation of the regime's free hyperparameters.
 *
 * Each fold standardizes its own training rows and solves the whole grid with
 * warm starts. The selected point minimizes the mean held-out squared error;
 * ties go to the point evaluated first, i.e. the larger penalty.
 * Throws DataError when n < 2 * folds.
 */
[[nodiscard]] CvResult cross_validate(const DesignMatrix& design, Regime regime, const GridConfig& config,
                                      std::uint64_t seed, const SolverOptions& options = {});

/// Fit on the full design at grid point `index`, warm-started along the grid
/// exactly as during cross-validation.
[[nodiscard]] FitResult fit_on_grid(const DesignMatrix& design, const PenaltyGrid& grid, std::size_t index,
                                    const SolverOptions& options = {});

/// Selects from per-point fold errors (folds x points, row-major by fold) using the
/// rule above and fills the table statistics.
[[nodiscard]] CvTable summarize_cv(const PenaltyGrid& grid, const std::vector<std::vector<double>>& fold_errors,
                                   double lambda_max);

}  // namespace argo::solver
