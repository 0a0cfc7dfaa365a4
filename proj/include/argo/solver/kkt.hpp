#pragma once

#include "argo/solver/design.hpp"
#include "argo/solver/lasso.hpp"

#include <cstddef>
#include <string>

namespace argo::solver {

struct KktReport {
    bool ok = true;
    double worst_violation = 0.0;  ///< largest excess over the allowed slack, 0 when ok
    std::size_t worst_column = 0;
    std::string message;
};

/**
 * Certifies a FitResult against the subgradient optimality conditions without
 * re-solving. The standardization is recomputed from `design`, and residuals
 * are formed from the original-scale intercept and coefficients, so the check
 * shares no state with the solver.
 *
 * With g_j the gradient of the smooth part in standardized column j:
 *   b_j == 0 : |g_j| <= lambda_j (1 + tol) + tol * s
 *   b_j != 0 : |g_j + lambda_j sign(b_j)| <= tol * s
 * where s = max(1, sd(y)). The residual mean must vanish to tol * s and
 * constant columns must carry exactly zero.
 */
[[nodiscard]] KktReport check_kkt(const DesignMatrix& design, const FitResult& fit, double tol = 1e-6);

}  // namespace argo::solver
