#pragma once

#include "argo/solver/design.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace argo::solver {

/// Per-column centering and scaling applied before solving.
struct Standardization {
    Eigen::VectorXd center;  ///< column means
    Eigen::VectorXd scale;   ///< population standard deviations (1 for constant columns)
    std::vector<bool> constant;
    double response_center = 0.0;
};

struct SolverOptions {
    int max_cycles = 100000;
    double tolerance = 1e-9;  ///< max coefficient change relative to the largest |coefficient|
    /// Evaluate the objective after every sweep and throw std::logic_error if it increases.
    bool verify_descent =
#ifdef NDEBUG
        false;
#else
        true;
#endif
};

struct FitResult {
    PenaltySpec spec;
    double intercept = 0.0;
    Eigen::VectorXd coefficients;               ///< original column scale
    Eigen::VectorXd standardized_coefficients;  ///< unit-variance column scale
    double objective_value = 0.0;  ///< mean-scale objective at the standardized solution
    std::size_t active_set_size = 0;
    Standardization standardization;
    int cycles = 0;

    /// intercept + coefficients . row
    [[nodiscard]] double predict(const Eigen::Ref<const Eigen::VectorXd>& row) const;
};

/**
 * @brief A design after window-local standardization, ready for repeated solves.
 *
 * Columns are centered and scaled to unit population variance; constant columns
 * are zeroed and pinned at a zero coefficient. The response is centered, so the
 * unpenalized intercept is the response mean on this scale.
 */
class StandardizedProblem {
public:
    explicit StandardizedProblem(const DesignMatrix& design);

    [[nodiscard]] std::size_t rows() const { return static_cast<std::size_t>(z_.rows()); }
    [[nodiscard]] std::size_t cols() const { return static_cast<std::size_t>(z_.cols()); }
    [[nodiscard]] const Standardization& standardization() const { return standardization_; }
    [[nodiscard]] const Eigen::MatrixXd& z() const { return z_; }
    [[nodiscard]] const Eigen::VectorXd& centered_response() const { return yc_; }
    [[nodiscard]] const std::vector<Group>& groups() const { return groups_; }

    /// max_j |<z_j, yc>| / n over non-constant columns, optionally restricted to one group.
    [[nodiscard]] double lambda_max() const;
    [[nodiscard]] double lambda_max(Group g) const;

    /// Mean-scale objective at standardized coefficients b.
    [[nodiscard]] double objective(const PenaltySpec& spec, const Eigen::VectorXd& b) const;

    /// Cyclic coordinate descent from `warm_start` (standardized scale; empty means zero).
    [[nodiscard]] FitResult solve(const PenaltySpec& spec, const Eigen::VectorXd& warm_start = {},
                                  const SolverOptions& options = {}) const;

private:
    Eigen::MatrixXd z_;
    Eigen::VectorXd yc_;
    std::vector<Group> groups_;
    Standardization standardization_;
};

/// Minimizes the penalized objective on a standardized copy of `design`.
/// Throws DataError for non-finite input or n < 2, ConvergenceError past max_cycles.
[[nodiscard]] FitResult fit(const DesignMatrix& design, const PenaltySpec& spec, const SolverOptions& options = {});

/// Smallest common L1 penalty whose solution is identically zero.
[[nodiscard]] double lambda_max(const DesignMatrix& design);
/// Same, for the columns of one group.
[[nodiscard]] double lambda_max(const DesignMatrix& design, Group group);

}  // namespace argo::solver
