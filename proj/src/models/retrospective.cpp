#include "argo/models/retrospective.hpp"

#include "argo/errors.hpp"
#include "argo/models/benchmarks.hpp"
#include "argo/parallel.hpp"

namespace argo::models {

std::string to_string(VintageMode m) { return m == VintageMode::finalized ? "finalized" : "as-published"; }

VintageMode parse_vintage_mode(const std::string& s) {
    if (s == "finalized") return VintageMode::finalized;
    if (s == "as-published" || s == "as_published") return VintageMode::as_published;
    throw ConfigError("unknown vintage mode '" + s + "' (expected finalized or as-published)");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::argo: return "argo";
        case Method::exo_only: return "exo_only";
        case Method::ar3: return "ar3";
        case Method::gft_ar3: return "gft_ar3";
        case Method::naive: return "naive";
    }
    return "unknown";
}

Method parse_method(const std::string& s) {
    for (Method m : {Method::argo, Method::exo_only, Method::ar3, Method::gft_ar3, Method::naive})
        if (s == to_string(m)) return m;
    throw ConfigError("unknown method '" + s + "'");
}

data::WeeklySeries NowcastSeries::estimates_percent() const {
    if (entries.empty()) return {};
    std::vector<double> v;
    v.reserve(entries.size());
    for (const auto& e : entries) v.push_back(100.0 * e.estimate);
    return data::WeeklySeries(entries.front().week, std::move(v), data::SeriesUnit::free);
}

std::size_t warm_up_weeks(Method method, const ModelSpec& spec) {
    switch (method) {
        case Method::argo: return spec.window + spec.lags;
        case Method::exo_only: return spec.window;
        case Method::ar3:
        case Method::gft_ar3: return spec.window + 3;
        case Method::naive: return 1;
    }
    return 0;
}

NowcastSeries run_retrospective(const Dataset& dataset, const data::WeekRange& range, const ModelSpec& spec,
                                VintageMode mode, Method method, const RetrospectiveOptions& options) {
    if (method == Method::argo || method == Method::exo_only) spec.validate();
    const auto& finalized = dataset.ili.finalized();
    const auto warm_up = static_cast<std::int64_t>(warm_up_weeks(method, spec));
    if (finalized.empty() || advance(range.first, -warm_up) < finalized.start() ||
        finalized.last() < predecessor(range.last))
        throw DataError("insufficient warm-up: " + std::to_string(warm_up) + " weeks of history needed before " +
                        range.first.to_string());
    const bool penalized = method == Method::argo || method == Method::exo_only;
    if (penalized && dataset.panel.term_count() > 0 &&
        (!dataset.panel.index_of(advance(range.first, -static_cast<std::int64_t>(spec.window))) ||
         !dataset.panel.index_of(range.last)))
        throw DataError("search panel does not cover the training windows of " + range.first.to_string() + " .. " +
                        range.last.to_string());
    if (method == Method::gft_ar3 && !dataset.gft) throw DataError("gft_ar3 requires an external estimate series");

    NowcastSeries out;
    out.method = method;
    out.mode = mode;
    out.lags = method == Method::argo ? spec.lags : 0;
    if (penalized) out.terms = dataset.panel.terms();
    out.entries.resize(range.size());

    const data::SearchPanel x_log = penalized && dataset.panel.term_count() > 0
                                        ? transforms::log_panel(dataset.panel, spec.transform)
                                        : data::SearchPanel{};
    ModelSpec model = spec;
    if (method == Method::exo_only) model.lags = 0;

    parallel_for(range.size(), options.threads, [&](std::size_t k) {
        const data::EpiWeek t = advance(range.first, static_cast<std::int64_t>(k));
        const data::History history = mode == VintageMode::as_published ? dataset.ili.history_as_of(t)
                                                                        : dataset.ili.finalized_history(t);
        NowcastEntry& entry = out.entries[k];
        entry.week = t;
        entry.filled_weeks = history.filled_from_finalized;
        switch (method) {
            case Method::naive: entry.estimate = benchmark_naive(history.series, t); break;
            case Method::ar3: entry.estimate = benchmark_ar3(history.series, t, spec); break;
            case Method::gft_ar3: entry.estimate = benchmark_gft_ar3(history.series, *dataset.gft, t, spec); break;
            case Method::argo:
            case Method::exo_only: {
                const data::WeeklySeries y_logit = transforms::logit_series(history.series, spec.transform);
                WeekFit wf = fit_week(y_logit, x_log, t, model, options.seed);
                const Eigen::VectorXd x_t =
                    x_log.term_count() > 0 ? x_log.row(t) : Eigen::VectorXd(Eigen::VectorXd::Zero(0));
                entry.estimate = nowcast(wf.fit, lag_vector(y_logit, t, model.lags), x_t);
                for (std::size_t i = 0; i < out.terms.size(); ++i)
                    if (wf.fit.coefficients(static_cast<Eigen::Index>(model.lags + i)) != 0.0)
                        entry.active_terms.push_back(out.terms[i]);
                entry.fit = std::move(wf.fit);
                break;
            }
        }
    });
    return out;
}

CoefficientTrajectory coefficient_trajectory(const NowcastSeries& series) {
    CoefficientTrajectory out;
    const std::size_t cols = series.lags + series.terms.size();
    for (std::size_t j = 1; j <= series.lags; ++j) out.columns.push_back("lag_" + std::to_string(j));
    for (const auto& term : series.terms) out.columns.push_back(term);
    out.values.resize(static_cast<Eigen::Index>(series.entries.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < series.entries.size(); ++r) {
        const auto& e = series.entries[r];
        if (!e.fit) throw DataError("coefficient trajectory needs fitted coefficients for every week");
        if (static_cast<std::size_t>(e.fit->coefficients.size()) != cols)
            throw DataError("coefficient count does not match lags + terms");
        out.weeks.push_back(e.week);
        out.values.row(static_cast<Eigen::Index>(r)) = e.fit->coefficients.transpose();
        std::size_t active = 0;
        for (Eigen::Index j = 0; j < e.fit->coefficients.size(); ++j) active += e.fit->coefficients(j) != 0.0;
        out.active_count.push_back(active);
    }
    return out;
}

}  // namespace argo::models
