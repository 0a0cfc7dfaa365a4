#include "argo/models/benchmarks.hpp"

#include "argo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace argo::models {

namespace {

constexpr std::size_t kArOrder = 3;
constexpr double kRidge = 1e-8;

/// Autoregressive design on the chosen scale for rows s in [t-window, t-1], optionally with one exogenous column.
struct ArProblem {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    Eigen::VectorXd predictors_at_t;
};

double to_model_scale(double percent, const ModelSpec& spec) {
    return spec.benchmark_scale == BenchmarkScale::percent
               ? percent
               : transforms::logit(percent / spec.transform.percent_divisor);
}

double to_proportion(double value, const ModelSpec& spec) {
    if (spec.benchmark_scale == BenchmarkScale::logit) return transforms::inverse_logit(value);
    // Clamp the percent prediction into the open interval (0, 100).
    const double lo = std::numeric_limits<double>::min();
    const double hi = std::nextafter(spec.transform.percent_divisor, 0.0);
    return std::clamp(value, lo, hi) / spec.transform.percent_divisor;
}

ArProblem ar_problem(const data::WeeklySeries& history, const data::EpiWeek& t, const ModelSpec& spec,
                     const data::WeeklySeries* exogenous) {
    const auto window = static_cast<std::int64_t>(spec.window);
    const data::EpiWeek first_row = advance(t, -window);
    const data::EpiWeek earliest = advance(first_row, -static_cast<std::int64_t>(kArOrder));
    if (history.empty() || earliest < history.start() || history.last() < predecessor(t))
        throw DataError("insufficient history for the AR(3) benchmark at " + t.to_string());
    if (exogenous && (!exogenous->contains(first_row) || !exogenous->contains(t)))
        throw DataError("exogenous estimate series does not cover the window and week " + t.to_string());

    const auto cols = static_cast<Eigen::Index>(kArOrder + (exogenous ? 1 : 0));
    ArProblem p;
    p.x.resize(window, cols);
    p.y.resize(window);
    p.predictors_at_t.resize(cols);
    const auto values = history.values();
    const auto y0 = *history.index_of(first_row);
    for (std::int64_t r = 0; r <= window; ++r) {
        const auto s = y0 + static_cast<std::size_t>(r);  // r == window is week t itself
        Eigen::VectorXd row(cols);
        for (std::size_t j = 1; j <= kArOrder; ++j)
            row(static_cast<Eigen::Index>(j - 1)) = to_model_scale(values[s - j], spec);
        if (exogenous) row(cols - 1) = exogenous->at(advance(first_row, r));
        if (r == window) {
            p.predictors_at_t = row;
        } else {
            p.x.row(r) = row;
            p.y(r) = to_model_scale(values[s], spec);
        }
    }
    return p;
}

double ar_predict(const ArProblem& p) {
    const OlsFit f = fit_ols(p.x, p.y);
    return f.intercept + f.coefficients.dot(p.predictors_at_t);
}

}  // namespace

OlsFit fit_ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    const auto n = x.rows();
    const auto p = x.cols();
    if (n < 1 || y.size() != n) throw DataError("fit_ols: shape mismatch");

    const Eigen::RowVectorXd x_mean = x.colwise().mean();
    const double y_mean = y.mean();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < p; ++j) {
        const double range = x.col(j).maxCoeff() - x.col(j).minCoeff();
        if (range > 1e-12 * std::max(1.0, x.col(j).cwiseAbs().maxCoeff())) keep.push_back(j);
    }

    OlsFit out;
    out.coefficients = Eigen::VectorXd::Zero(p);
    if (!keep.empty()) {
        Eigen::MatrixXd xc(n, static_cast<Eigen::Index>(keep.size()));
        for (std::size_t k = 0; k < keep.size(); ++k)
            xc.col(static_cast<Eigen::Index>(k)) = x.col(keep[k]).array() - x_mean(keep[k]);
        const Eigen::VectorXd yc = y.array() - y_mean;

        Eigen::VectorXd b;
        const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xc);
        if (qr.rank() == xc.cols()) {
            b = qr.solve(yc);
        } else {
            out.ridge_fallback = true;
            Eigen::MatrixXd gram = xc.transpose() * xc;
            gram.diagonal().array() += kRidge;
            b = gram.ldlt().solve(xc.transpose() * yc);
        }
        for (std::size_t k = 0; k < keep.size(); ++k) out.coefficients(keep[k]) = b(static_cast<Eigen::Index>(k));
    }
    out.intercept = y_mean - x_mean.dot(out.coefficients);
    return out;
}

double benchmark_naive(const data::WeeklySeries& history_percent, const data::EpiWeek& t) {
    const data::EpiWeek prev = predecessor(t);
    if (!history_percent.contains(prev))
        throw DataError("naive benchmark: no value visible for " + prev.to_string());
    return history_percent.at(prev) / 100.0;
}

double benchmark_ar3(const data::WeeklySeries& history_percent, const data::EpiWeek& t, const ModelSpec& spec) {
    return to_proportion(ar_predict(ar_problem(history_percent, t, spec, nullptr)), spec);
}

double benchmark_gft_ar3(const data::WeeklySeries& history_percent, const data::WeeklySeries& gft,
                         const data::EpiWeek& t, const ModelSpec& spec) {
    return to_proportion(ar_predict(ar_problem(history_percent, t, spec, &gft)), spec);
}

WeekFit fit_week_exo_only(const data::WeeklySeries& y_logit, const data::SearchPanel& x_log, const data::EpiWeek& t,
                          const ModelSpec& spec, std::uint64_t global_seed) {
    ModelSpec exo = spec;
    exo.lags = 0;
    return fit_week(y_logit, x_log, t, exo, global_seed);
}

double benchmark_exo_only(const data::WeeklySeries& y_logit, const data::SearchPanel& x_log, const data::EpiWeek& t,
                          const ModelSpec& spec, std::uint64_t global_seed) {
    const WeekFit wf = fit_week_exo_only(y_logit, x_log, t, spec, global_seed);
    return nowcast(wf.fit, Eigen::VectorXd(0), x_log.row(t));
}

}  // namespace argo::models
