#include "argo/eval/metrics.hpp"

#include "argo/errors.hpp"

#include <cmath>

namespace argo::eval {

namespace {

void require_aligned(std::span<const double> a, std::span<const double> b, std::size_t min_points, const char* what) {
    if (a.size() != b.size())
        throw DataError(std::string(what) + ": series of different lengths");
    if (a.size() < min_points)
        throw DataError(std::string(what) + ": needs at least " + std::to_string(min_points) + " points in period");
}

double pearson(std::span<const double> a, std::span<const double> b, const char* what) {
    const auto n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0) throw DomainError(std::string(what) + ": zero variance");
    return sab / std::sqrt(saa * sbb);
}

std::vector<double> increments(std::span<const double> v) {
    std::vector<double> d(v.size() - 1);
    for (std::size_t i = 1; i < v.size(); ++i) d[i - 1] = v[i] - v[i - 1];
    return d;
}

}  // namespace

double rmse(std::span<const double> estimates, std::span<const double> targets) {
    require_aligned(estimates, targets, 2, "rmse");
    double ss = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) ss += (estimates[i] - targets[i]) * (estimates[i] - targets[i]);
    return std::sqrt(ss / static_cast<double>(estimates.size()));
}

double mae(std::span<const double> estimates, std::span<const double> targets) {
    require_aligned(estimates, targets, 2, "mae");
    double s = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) s += std::abs(estimates[i] - targets[i]);
    return s / static_cast<double>(estimates.size());
}

double mape(std::span<const double> estimates, std::span<const double> targets) {
    require_aligned(estimates, targets, 2, "mape");
    double s = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        if (targets[i] == 0.0) throw DomainError("mape: zero target");
        s += std::abs(estimates[i] - targets[i]) / targets[i];
    }
    return s / static_cast<double>(estimates.size());
}

double correlation(std::span<const double> estimates, std::span<const double> targets) {
    require_aligned(estimates, targets, 3, "correlation");
    return pearson(estimates, targets, "correlation");
}

double correlation_of_increment(std::span<const double> estimates, std::span<const double> targets) {
    require_aligned(estimates, targets, 3, "correlation of increment");
    const auto de = increments(estimates);
    const auto dt = increments(targets);
    return pearson(de, dt, "correlation of increment");
}

double relative_efficiency(std::span<const double> errors1, std::span<const double> errors2) {
    require_aligned(errors1, errors2, 1, "relative efficiency");
    double ss1 = 0.0, ss2 = 0.0;
    for (std::size_t i = 0; i < errors1.size(); ++i) {
        ss1 += errors1[i] * errors1[i];
        ss2 += errors2[i] * errors2[i];
    }
    if (ss1 == 0.0) throw DomainError("relative efficiency: reference errors have zero MSE");
    // Equal n cancels in the ratio of mean squared errors.
    return ss2 / ss1;
}

std::string to_string(Metric m) {
    switch (m) {
        case Metric::rmse: return "rmse";
        case Metric::mae: return "mae";
        case Metric::mape: return "mape";
        case Metric::correlation: return "correlation";
        case Metric::correlation_of_increment: return "correlation_of_increment";
    }
    return "unknown";
}

bool lower_is_better(Metric m) { return m == Metric::rmse || m == Metric::mae || m == Metric::mape; }

double compute(Metric m, std::span<const double> estimates, std::span<const double> targets) {
    switch (m) {
        case Metric::rmse: return rmse(estimates, targets);
        case Metric::mae: return mae(estimates, targets);
        case Metric::mape: return mape(estimates, targets);
        case Metric::correlation: return correlation(estimates, targets);
        case Metric::correlation_of_increment: return correlation_of_increment(estimates, targets);
    }
    return 0.0;
}

Period Period::from_dates(std::string name, data::Date first_day, data::Date last_day) {
    if (last_day < first_day) throw ConfigError("period '" + name + "' ends before it starts");
    return Period{std::move(name), data::week_containing(first_day), data::week_containing(last_day)};
}

std::vector<Period> preset_periods() {
    using data::parse_date;
    return {
        Period::from_dates("whole", parse_date("2009-03-29"), parse_date("2015-07-18")),
        Period::from_dates("h1n1", parse_date("2009-03-29"), parse_date("2009-12-27")),
        Period::from_dates("2010-11", parse_date("2010-10-03"), parse_date("2011-05-22")),
        Period::from_dates("2011-12", parse_date("2011-10-02"), parse_date("2012-05-20")),
        Period::from_dates("2012-13", parse_date("2012-09-30"), parse_date("2013-05-19")),
        Period::from_dates("2013-14", parse_date("2013-09-29"), parse_date("2014-05-18")),
        Period::from_dates("2014-15", parse_date("2014-09-28"), parse_date("2015-05-17")),
    };
}

PeriodSlice slice_period(const data::WeeklySeries& estimates, const data::WeeklySeries& targets,
                         const Period& period) {
    if (period.end < period.start) throw ConfigError("period '" + period.name + "' ends before it starts");
    const data::WeekRange r{period.start, period.end};
    const data::WeeklySeries e = estimates.slice(r);
    const data::WeeklySeries t = targets.slice(r);
    return PeriodSlice{{e.values().begin(), e.values().end()}, {t.values().begin(), t.values().end()}};
}

}  // namespace argo::eval
