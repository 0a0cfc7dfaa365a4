#include "argo/solver/cross_validation.hpp"

#include "argo/errors.hpp"
#include "argo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace argo::solver {

namespace {

/// top, ..., top * ratio, log-spaced.
std::vector<double> log_grid(double top, double ratio, int points) {
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = top;
        return out;
    }
    for (int k = 0; k < points; ++k)
        out[static_cast<std::size_t>(k)] = top * std::pow(ratio, static_cast<double>(k) / (points - 1));
    return out;
}

/// Warm starts run along each row; a new row starts from the previous row's first solution.
template <class OnSolution>
void solve_along_grid(const StandardizedProblem& problem, const PenaltyGrid& grid, std::size_t upto,
                      const SolverOptions& options, OnSolution&& on_solution) {
    Eigen::VectorXd warm, row_start;
    for (std::size_t k = 0; k <= upto; ++k) {
        const bool new_row = k % grid.row_length == 0;
        const Eigen::VectorXd& init = new_row ? row_start : warm;
        FitResult f = problem.solve(grid.specs[k], init, options);
        if (new_row) row_start = f.standardized_coefficients;
        warm = f.standardized_coefficients;
        on_solution(k, std::move(f));
    }
}

}  // namespace

void GridConfig::validate() const {
    if (folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
    if (points_1d < 1 || points_2d < 2) throw ConfigError("grid must have at least 1 (1-D) or 2 (2-D) points");
    for (double r : {min_ratio, min_ratio_underdetermined, l2_min_ratio})
        if (!(r > 0.0 && r < 1.0)) throw ConfigError("grid ratios must lie in (0, 1)");
    if (!(l2_max > 0.0)) throw ConfigError("grid l2_max must be positive");
}

std::vector<int> fold_assignment(std::size_t n, int folds, FoldStrategy strategy, std::uint64_t seed) {
    std::vector<int> fold(n);
    if (strategy == FoldStrategy::contiguous) {
        for (std::size_t i = 0; i < n; ++i)
            fold[i] = static_cast<int>(i * static_cast<std::size_t>(folds) / n);
        return fold;
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
    for (std::size_t i = 0; i < n; ++i) fold[perm[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
    return fold;
}

PenaltyGrid penalty_grid(double lambda_max, Regime regime, const GridConfig& config, bool underdetermined) {
    PenaltyGrid grid;
    const double ratio = underdetermined ? config.min_ratio_underdetermined : config.min_ratio;
    const auto l1_1d = log_grid(lambda_max, ratio, config.points_1d);
    const auto l1_2d = log_grid(lambda_max, ratio, config.points_2d);
    const auto l2_1d = log_grid(config.l2_max, config.l2_min_ratio, config.points_1d);
    const auto l2_2d = log_grid(config.l2_max, config.l2_min_ratio, config.points_2d);

    auto push = [&](const PenaltySpec& s, bool restricted) {
        grid.specs.push_back(s);
        grid.restricted.push_back(restricted);
    };
    switch (regime) {
        case Regime::same_l1:
            for (double l : l1_1d) push(PenaltySpec::same_l1(l), false);
            grid.row_length = l1_1d.size();
            break;
        case Regime::same_l2:
            for (double e : l2_1d) push(PenaltySpec::same_l2(e), false);
            grid.row_length = l2_1d.size();
            break;
        case Regime::separate_l1:
            for (std::size_t a = 0; a < l1_2d.size(); ++a)
                for (std::size_t b = 0; b < l1_2d.size(); ++b)
                    push(PenaltySpec::separate_l1(l1_2d[a], l1_2d[b]), a == b);
            grid.row_length = l1_2d.size();
            break;
        case Regime::separate_l2:
            for (std::size_t a = 0; a < l2_2d.size(); ++a)
                for (std::size_t b = 0; b < l2_2d.size(); ++b)
                    push(PenaltySpec::separate_l2(l2_2d[a], l2_2d[b]), a == b);
            grid.row_length = l2_2d.size();
            break;
        case Regime::same_elastic_net: {
            // eta axis: points_2d - 1 log-spaced values, then eta = 0 (the pure-L1 restriction).
            auto etas = log_grid(config.l2_max, config.l2_min_ratio, config.points_2d - 1);
            etas.push_back(0.0);
            for (double l : l1_2d)
                for (double e : etas) push(PenaltySpec::elastic_net(l, e), e == 0.0);
            grid.row_length = etas.size();
            break;
        }
    }
    return grid;
}

CvTable summarize_cv(const PenaltyGrid& grid, const std::vector<std::vector<double>>& fold_errors,
                     double lambda_max) {
    CvTable table;
    table.lambda_max = lambda_max;
    const std::size_t points = grid.specs.size();
    const auto folds = static_cast<double>(fold_errors.size());
    table.points.resize(points);
    for (std::size_t k = 0; k < points; ++k) {
        double sum = 0.0;
        for (const auto& f : fold_errors) sum += f[k];
        const double mean = sum / folds;
        double ss = 0.0;
        for (const auto& f : fold_errors) ss += (f[k] - mean) * (f[k] - mean);
        const double sd = fold_errors.size() > 1 ? std::sqrt(ss / (folds - 1.0)) : 0.0;
        table.points[k] = CvPoint{grid.specs[k], mean, sd / std::sqrt(folds), grid.restricted[k], false};
    }
    for (std::size_t k = 1; k < points; ++k)
        if (table.points[k].mean_error < table.points[table.selected].mean_error) table.selected = k;

    const double threshold = table.points[table.selected].mean_error + table.points[table.selected].std_error;
    bool any_restricted = false, restricted_ok = false;
    for (auto& pt : table.points) {
        pt.within_one_se = pt.mean_error <= threshold;
        if (pt.restricted) {
            any_restricted = true;
            restricted_ok = restricted_ok || pt.within_one_se;
        }
    }
    if (any_restricted) table.restricted_within_one_se = restricted_ok;
    return table;
}

CvResult cross_validate(const DesignMatrix& design, Regime regime, const GridConfig& config, std::uint64_t seed,
                        const SolverOptions& options) {
    config.validate();
    design.validate();
    const std::size_t n = design.rows();
    if (n < 2 * static_cast<std::size_t>(config.folds))
        throw DataError("cross-validation needs at least " + std::to_string(2 * config.folds) +
                        " observations, got " + std::to_string(n));

    const StandardizedProblem full(design);
    // The smallest fold training set decides: near-square fold fits are as slow as n <= p ones.
    const auto folds_n = static_cast<std::size_t>(config.folds);
    const std::size_t smallest_train = n - (n + folds_n - 1) / folds_n;
    const PenaltyGrid grid = penalty_grid(full.lambda_max(), regime, config, smallest_train <= design.cols());
    const auto folds = fold_assignment(n, config.folds, config.fold_strategy, seed);

    std::vector<std::vector<double>> fold_errors(static_cast<std::size_t>(config.folds),
                                                 std::vector<double>(grid.specs.size()));
    for (int f = 0; f < config.folds; ++f) {
        std::vector<std::size_t> train, test;
        for (std::size_t i = 0; i < n; ++i) (folds[i] == f ? test : train).push_back(i);
        const StandardizedProblem problem(design.subset(train));
        solve_along_grid(problem, grid, grid.specs.size() - 1, options, [&](std::size_t k, const FitResult& fit) {
            double sse = 0.0;
            for (const std::size_t i : test) {
                const double e = design.y(static_cast<Eigen::Index>(i)) -
                                 fit.predict(design.x.row(static_cast<Eigen::Index>(i)).transpose());
                sse += e * e;
            }
            fold_errors[static_cast<std::size_t>(f)][k] = sse / static_cast<double>(test.size());
        });
    }

    CvResult result;
    result.table = summarize_cv(grid, fold_errors, full.lambda_max());
    result.selected = grid.specs[result.table.selected];
    result.grid = grid;
    return result;
}

FitResult fit_on_grid(const DesignMatrix& design, const PenaltyGrid& grid, std::size_t index,
                      const SolverOptions& options) {
    if (index >= grid.specs.size()) throw std::out_of_range("grid index out of range");
    const StandardizedProblem problem(design);
    FitResult out;
    solve_along_grid(problem, grid, index, options, [&](std::size_t k, FitResult&& f) {
        if (k == index) out = std::move(f);
    });
    return out;
}

}  // namespace argo::solver
