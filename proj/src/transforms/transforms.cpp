#include "argo/transforms/transforms.hpp"

#include "argo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace argo::transforms {

void TransformParams::validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw ConfigError("transform delta must be positive");
    if (!(percent_divisor > 0.0)) throw ConfigError("percent divisor must be positive");
}

double logit(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("logit undefined for p = " + std::to_string(p));
    return std::log(p) - std::log1p(-p);
}

double inverse_logit(double y) noexcept {
    constexpr double lo = std::numeric_limits<double>::denorm_min();
    const double hi = std::nextafter(1.0, 0.0);
    double p = 0.0;
    if (y >= 0.0) {
        p = 1.0 / (1.0 + std::exp(-y));
    } else {
        const double e = std::exp(y);
        p = e / (1.0 + e);
    }
    return std::clamp(p, lo, hi);
}

double log_search(double x, const TransformParams& params) {
    if (!(x >= 0.0)) throw DomainError("log_search undefined for negative frequency " + std::to_string(x));
    return std::log(x + params.delta);
}

std::vector<double> rescale_correlate(std::span<const double> column) {
    if (column.empty()) throw DomainError("cannot rescale an empty column");
    const auto [mn, mx] = std::minmax_element(column.begin(), column.end());
    const double lo = *mn;
    const double hi = *mx;
    if (!(hi > lo)) throw DomainError("degenerate column: all values equal");
    const double factor = 100.0 / (hi - lo);
    std::vector<double> out(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (column[i] == hi) {
            out[i] = 100.0;
            continue;
        }
        out[i] = std::clamp((column[i] - lo) * factor, 0.0, 100.0);
    }
    return out;
}

Eigen::MatrixXd rescale_columns(const Eigen::MatrixXd& standardized) {
    Eigen::MatrixXd out(standardized.rows(), standardized.cols());
    for (Eigen::Index j = 0; j < standardized.cols(); ++j) {
        const Eigen::VectorXd col = standardized.col(j);
        const auto scaled = rescale_correlate(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
        out.col(j) = Eigen::Map<const Eigen::VectorXd>(scaled.data(), col.size());
    }
    return out;
}

data::WeeklySeries logit_series(const data::WeeklySeries& percent, const TransformParams& params) {
    if (percent.unit() != data::SeriesUnit::percent)
        throw DataError("logit_series expects a percent-unit series");
    std::vector<double> y(percent.size());
    const auto v = percent.values();
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = logit(v[i] / params.percent_divisor);
    return data::WeeklySeries(percent.start(), std::move(y), data::SeriesUnit::logit);
}

data::SearchPanel log_panel(const data::SearchPanel& panel, const TransformParams& params) {
    if (panel.scale() != data::PanelScale::frequency) throw DataError("panel is already log-transformed");
    return panel.map_cells([&](double x) { return log_search(x, params); }, data::PanelScale::log);
}

}  // namespace argo::transforms
