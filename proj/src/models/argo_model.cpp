#include "argo/models/argo_model.hpp"

#include "argo/errors.hpp"
#include "argo/rng.hpp"

namespace argo::models {

void ModelSpec::validate() const {
    transform.validate();
    cv.validate();
    if (window <= lags)
        throw ConfigError("training window (" + std::to_string(window) + ") must exceed the lag count (" +
                          std::to_string(lags) + ")");
    if (window < 2 * static_cast<std::size_t>(cv.folds))
        throw ConfigError("training window (" + std::to_string(window) + ") too short for " +
                          std::to_string(cv.folds) + "-fold cross-validation");
}

std::uint64_t week_seed(std::uint64_t global_seed, const data::EpiWeek& t) {
    return substream_seed(global_seed, static_cast<std::uint64_t>(t.end_date.time_since_epoch().count()));
}

solver::DesignMatrix build_training_design(const data::WeeklySeries& y_logit, const data::SearchPanel& x_log,
                                           const data::EpiWeek& t, const ModelSpec& spec) {
    const auto window = static_cast<std::int64_t>(spec.window);
    const auto lags = static_cast<std::int64_t>(spec.lags);
    const data::EpiWeek first_row = advance(t, -window);
    const data::EpiWeek earliest = advance(first_row, -lags);
    if (y_logit.empty() || earliest < y_logit.start() || y_logit.last() < predecessor(t))
        throw DataError("insufficient history for week " + t.to_string() + ": need series from " +
                        earliest.to_string());
    const auto k_terms = static_cast<Eigen::Index>(x_log.term_count());
    if (k_terms > 0 && (!x_log.index_of(first_row) || !x_log.index_of(predecessor(t))))
        throw DataError("search panel does not cover the training window ending " + predecessor(t).to_string());

    solver::DesignMatrix d;
    d.x.resize(window, lags + k_terms);
    d.y.resize(window);
    d.group_of.assign(static_cast<std::size_t>(lags), solver::Group::lag);
    d.group_of.resize(static_cast<std::size_t>(lags + k_terms), solver::Group::exo);

    const auto values = y_logit.values();
    const auto y0 = *y_logit.index_of(first_row);
    const auto x0 = k_terms > 0 ? static_cast<Eigen::Index>(*x_log.index_of(first_row)) : 0;
    for (std::int64_t r = 0; r < window; ++r) {
        const auto s = y0 + static_cast<std::size_t>(r);
        d.y(r) = values[s];
        for (std::int64_t j = 1; j <= lags; ++j) d.x(r, j - 1) = values[s - static_cast<std::size_t>(j)];
        if (k_terms > 0) d.x.row(r).tail(k_terms) = x_log.rows().row(x0 + r);
    }
    return d;
}

Eigen::VectorXd lag_vector(const data::WeeklySeries& y_logit, const data::EpiWeek& t, std::size_t lags) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(lags));
    for (std::size_t j = 1; j <= lags; ++j)
        out(static_cast<Eigen::Index>(j - 1)) = y_logit.at(advance(t, -static_cast<std::int64_t>(j)));
    return out;
}

WeekFit fit_week(const data::WeeklySeries& y_logit, const data::SearchPanel& x_log, const data::EpiWeek& t,
                 const ModelSpec& spec, std::uint64_t global_seed) {
    spec.validate();
    WeekFit out;
    out.week = t;
    out.seed = week_seed(global_seed, t);
    const solver::DesignMatrix design = build_training_design(y_logit, x_log, t, spec);
    out.cv = solver::cross_validate(design, spec.regime, spec.cv, out.seed, spec.solver);
    out.fit = solver::fit_on_grid(design, out.cv.grid, out.cv.table.selected, spec.solver);
    return out;
}

double nowcast(const solver::FitResult& fit, const Eigen::VectorXd& y_lags, const Eigen::VectorXd& x_t) {
    if (y_lags.size() + x_t.size() != fit.coefficients.size())
        throw DataError("nowcast: " + std::to_string(y_lags.size()) + " lags + " + std::to_string(x_t.size()) +
                        " terms do not match " + std::to_string(fit.coefficients.size()) + " coefficients");
    const auto n_lags = y_lags.size();
    const double linear = fit.intercept + fit.coefficients.head(n_lags).dot(y_lags) +
                          fit.coefficients.tail(x_t.size()).dot(x_t);
    return transforms::inverse_logit(linear);
}

}  // namespace argo::models
