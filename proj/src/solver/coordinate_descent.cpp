#include "argo/solver/lasso.hpp"

#include "argo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace argo::solver {

namespace {

double soft_threshold(double v, double t) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
}

}  // namespace

double FitResult::predict(const Eigen::Ref<const Eigen::VectorXd>& row) const {
    return intercept + coefficients.dot(row);
}

StandardizedProblem::StandardizedProblem(const DesignMatrix& design) : groups_(design.group_of) {
    design.validate();
    const auto n = design.x.rows();
    const auto p = design.x.cols();
    if (n < 2) throw DataError("penalized fit needs at least 2 observations");

    auto& s = standardization_;
    s.center = design.x.colwise().mean().transpose();
    s.scale = Eigen::VectorXd::Ones(p);
    s.constant.assign(static_cast<std::size_t>(p), false);
    s.response_center = design.y.mean();

    z_.resize(n, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const auto col = design.x.col(j);
        const double range = col.maxCoeff() - col.minCoeff();
        const double magnitude = std::max(1.0, col.cwiseAbs().maxCoeff());
        if (range <= 1e-12 * magnitude) {
            s.constant[static_cast<std::size_t>(j)] = true;
            z_.col(j).setZero();
            continue;
        }
        const Eigen::VectorXd centered = col.array() - s.center(j);
        const double sd = std::sqrt(centered.squaredNorm() / static_cast<double>(n));
        s.scale(j) = sd;
        z_.col(j) = centered / sd;
    }
    yc_ = design.y.array() - s.response_center;
}

double StandardizedProblem::lambda_max() const {
    double best = 0.0;
    const double n = static_cast<double>(rows());
    for (Eigen::Index j = 0; j < z_.cols(); ++j) {
        if (standardization_.constant[static_cast<std::size_t>(j)]) continue;
        best = std::max(best, std::abs(z_.col(j).dot(yc_)) / n);
    }
    return best;
}

double StandardizedProblem::lambda_max(Group g) const {
    double best = 0.0;
    const double n = static_cast<double>(rows());
    for (Eigen::Index j = 0; j < z_.cols(); ++j) {
        if (standardization_.constant[static_cast<std::size_t>(j)] || groups_[static_cast<std::size_t>(j)] != g)
            continue;
        best = std::max(best, std::abs(z_.col(j).dot(yc_)) / n);
    }
    return best;
}

double StandardizedProblem::objective(const PenaltySpec& spec, const Eigen::VectorXd& b) const {
    const double n = static_cast<double>(rows());
    const Eigen::VectorXd r = yc_ - z_ * b;
    double value = 0.5 * r.squaredNorm() / n;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
        const Group g = groups_[static_cast<std::size_t>(j)];
        value += spec.lambda(g) * std::abs(b(j)) + spec.eta(g) * b(j) * b(j);
    }
    return value;
}

FitResult StandardizedProblem::solve(const PenaltySpec& spec, const Eigen::VectorXd& warm_start,
                                     const SolverOptions& options) const {
    spec.validate();
    const auto p = z_.cols();
    const double n = static_cast<double>(rows());
    const auto& constant = standardization_.constant;

    Eigen::VectorXd b = warm_start.size() == p ? warm_start : Eigen::VectorXd::Zero(p);
    for (Eigen::Index j = 0; j < p; ++j)
        if (constant[static_cast<std::size_t>(j)]) b(j) = 0.0;
    Eigen::VectorXd r = yc_ - z_ * b;

    std::vector<double> lam(static_cast<std::size_t>(p)), shrink(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) {
        const Group g = groups_[static_cast<std::size_t>(j)];
        lam[static_cast<std::size_t>(j)] = spec.lambda(g);
        shrink[static_cast<std::size_t>(j)] = 1.0 / (1.0 + 2.0 * spec.eta(g));
    }

    std::vector<Eigen::Index> all, active;
    for (Eigen::Index j = 0; j < p; ++j)
        if (!constant[static_cast<std::size_t>(j)]) all.push_back(j);

    // One pass over `cols`; returns the largest absolute coefficient change.
    auto sweep = [&](const std::vector<Eigen::Index>& cols) {
        double max_delta = 0.0;
        for (const Eigen::Index j : cols) {
            const auto zj = z_.col(j);
            const double old = b(j);
            const double rho = zj.dot(r) / n + old;
            const double updated =
                soft_threshold(rho, lam[static_cast<std::size_t>(j)]) * shrink[static_cast<std::size_t>(j)];
            if (updated != old) {
                r.noalias() -= (updated - old) * zj;
                b(j) = updated;
                max_delta = std::max(max_delta, std::abs(updated - old));
            }
        }
        return max_delta;
    };
    auto converged = [&](double max_delta) {
        return max_delta == 0.0 || max_delta <= options.tolerance * b.cwiseAbs().maxCoeff();
    };

    double last_objective = options.verify_descent ? objective(spec, b) : 0.0;
    auto check_descent = [&] {
        if (!options.verify_descent) return;
        const double now = objective(spec, b);
        if (now > last_objective + 1e-12 * std::max(1.0, std::abs(last_objective)))
            throw std::logic_error("coordinate descent increased the objective");
        last_objective = now;
    };

    // Anderson extrapolation of the active-set iterates. A step is kept only if it
    // lowers the objective, so the plain coordinate updates stay in charge of convergence.
    constexpr std::size_t kAndersonDepth = 5;
    std::vector<Eigen::VectorXd> history;
    auto active_index = [&] { return Eigen::Map<const Eigen::Matrix<Eigen::Index, Eigen::Dynamic, 1>>(
                                  active.data(), static_cast<Eigen::Index>(active.size())); };
    auto extrapolate = [&] {
        const auto m = static_cast<Eigen::Index>(kAndersonDepth);
        const auto a = static_cast<Eigen::Index>(active.size());
        Eigen::MatrixXd u(a, m);
        for (Eigen::Index k = 0; k < m; ++k)
            u.col(k) = history[static_cast<std::size_t>(k + 1)] - history[static_cast<std::size_t>(k)];
        Eigen::MatrixXd gram = u.transpose() * u;
        const double trace = gram.trace();
        if (!(trace > 0.0)) return;
        gram.diagonal().array() += 1e-10 * trace;
        const Eigen::VectorXd w = gram.ldlt().solve(Eigen::VectorXd::Ones(m));
        const double total = w.sum();
        if (!std::isfinite(total) || total == 0.0) return;
        Eigen::VectorXd candidate = Eigen::VectorXd::Zero(a);
        for (Eigen::Index k = 0; k < m; ++k) candidate += (w(k) / total) * history[static_cast<std::size_t>(k + 1)];
        Eigen::VectorXd trial = b;
        for (Eigen::Index k = 0; k < a; ++k) trial(active[static_cast<std::size_t>(k)]) = candidate(k);
        Eigen::VectorXd trial_r = yc_;
        for (Eigen::Index k = 0; k < a; ++k) {
            const Eigen::Index j = active[static_cast<std::size_t>(k)];
            trial_r.noalias() -= trial(j) * z_.col(j);
        }
        auto value = [&](const Eigen::VectorXd& coef, const Eigen::VectorXd& res) {
            double v = 0.5 * res.squaredNorm() / n;
            for (const Eigen::Index j : active)
                v += lam[static_cast<std::size_t>(j)] * std::abs(coef(j)) +
                     (1.0 / shrink[static_cast<std::size_t>(j)] - 1.0) * 0.5 * coef(j) * coef(j);
            return v;
        };
        if (value(trial, trial_r) < value(b, r)) {
            b = std::move(trial);
            r = std::move(trial_r);
        }
    };

    int cycles = 0;
    auto count_cycle = [&] {
        if (++cycles > options.max_cycles)
            throw ConvergenceError("coordinate descent did not converge within " +
                                   std::to_string(options.max_cycles) + " cycles");
    };

    while (true) {
        count_cycle();
        const double full_delta = sweep(all);
        check_descent();
        if (converged(full_delta)) break;

        active.clear();
        for (const Eigen::Index j : all)
            if (b(j) != 0.0) active.push_back(j);
        history.clear();
        while (true) {
            count_cycle();
            const double delta = sweep(active);
            check_descent();
            if (converged(delta)) break;
            history.emplace_back(b(active_index()));
            if (history.size() == kAndersonDepth + 1) {
                extrapolate();
                history.clear();
            }
        }
    }

    FitResult out;
    out.spec = spec;
    out.standardized_coefficients = b;
    out.coefficients = Eigen::VectorXd::Zero(p);
    double offset = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
        if (b(j) == 0.0) continue;
        out.coefficients(j) = b(j) / standardization_.scale(j);
        offset += out.coefficients(j) * standardization_.center(j);
        ++out.active_set_size;
    }
    out.intercept = standardization_.response_center - offset;
    out.objective_value = objective(spec, b);
    out.standardization = standardization_;
    out.cycles = cycles;
    return out;
}

FitResult fit(const DesignMatrix& design, const PenaltySpec& spec, const SolverOptions& options) {
    return StandardizedProblem(design).solve(spec, {}, options);
}

double lambda_max(const DesignMatrix& design) { return StandardizedProblem(design).lambda_max(); }

double lambda_max(const DesignMatrix& design, Group group) {
    return StandardizedProblem(design).lambda_max(group);
}

}  // namespace argo::solver
