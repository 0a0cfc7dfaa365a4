#include "argo/solver/kkt.hpp"

#include <algorithm>
#include <cmath>

namespace argo::solver {

KktReport check_kkt(const DesignMatrix& design, const FitResult& fit, double tol) {
    design.validate();
    KktReport report;
    const auto n = static_cast<double>(design.rows());
    const auto p = design.x.cols();
    const PenaltySpec& spec = fit.spec;

    const Eigen::VectorXd residual =
        (design.y.array() - fit.intercept).matrix() - design.x * fit.coefficients;
    const double y_mean = design.y.mean();
    const double y_sd = std::sqrt((design.y.array() - y_mean).square().sum() / n);
    const double slack = tol * std::max(1.0, y_sd);

    auto flag = [&](double excess, std::size_t column, std::string what) {
        if (excess <= 0.0) return;
        report.ok = false;
        if (excess > report.worst_violation) {
            report.worst_violation = excess;
            report.worst_column = column;
            report.message = std::move(what);
        }
    };

    flag(std::abs(residual.mean()) - slack, 0, "intercept: residual mean not zero");

    for (Eigen::Index j = 0; j < p; ++j) {
        const auto col = design.x.col(j);
        const double mean = col.mean();
        const double range = col.maxCoeff() - col.minCoeff();
        const double magnitude = std::max(1.0, col.cwiseAbs().maxCoeff());
        const auto column = static_cast<std::size_t>(j);
        if (range <= 1e-12 * magnitude) {
            flag(fit.coefficients(j) != 0.0 ? 1.0 : 0.0, column, "constant column with nonzero coefficient");
            continue;
        }
        const double sd = std::sqrt((col.array() - mean).square().sum() / n);
        const double b = fit.coefficients(j) * sd;
        const Group g = design.group_of[column];
        const double lambda = spec.lambda(g);
        const double gradient = -((col.array() - mean) / sd * residual.array()).sum() / n + 2.0 * spec.eta(g) * b;
        if (b == 0.0) {
            flag(std::abs(gradient) - (lambda * (1.0 + tol) + slack), column, "zero coefficient: gradient exceeds penalty");
        } else {
            flag(std::abs(gradient + lambda * (b > 0 ? 1.0 : -1.0)) - slack, column,
                 "nonzero coefficient: stationarity violated");
        }
    }
    return report;
}

}  // namespace argo::solver
