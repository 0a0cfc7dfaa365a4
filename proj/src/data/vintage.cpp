#include "argo/data/vintage.hpp"

#include "argo/errors.hpp"

#include <algorithm>

namespace argo::data {

VintageSeries::VintageSeries(std::vector<VintageRecord> records, WeeklySeries finalized)
    : records_(std::move(records)), finalized_(std::move(finalized)) {
    std::sort(records_.begin(), records_.end(), [](const VintageRecord& a, const VintageRecord& b) {
        if (a.target != b.target) return a.target < b.target;
        return a.published < b.published;
    });
    for (std::size_t r = 0; r < records_.size(); ++r) {
        const auto& rec = records_[r];
        if (rec.published < successor(rec.target))
            throw DataError("record for " + rec.target.to_string() + " published " +
                            rec.published.to_string() + " violates the one-week reporting delay");
        if (r > 0 && records_[r - 1].target == rec.target && records_[r - 1].published == rec.published)
            throw DataError("duplicate record for target " + rec.target.to_string() + " published " +
                            rec.published.to_string());
        if (!finalized_.contains(rec.target))
            throw DataError("record target " + rec.target.to_string() + " outside the finalized series");
        if (!(rec.value > 0.0 && rec.value < 100.0))
            throw DataError("vintage value outside (0, 100) for " + rec.target.to_string());
    }
    offsets_.assign(finalized_.size() + 1, 0);
    std::size_t r = 0;
    for (std::size_t i = 0; i < finalized_.size(); ++i) {
        offsets_[i] = r;
        const EpiWeek w = finalized_.week_at(i);
        while (r < records_.size() && records_[r].target == w) ++r;
    }
    offsets_[finalized_.size()] = r;
}

AsOfSeries VintageSeries::as_of(const EpiWeek& j) const {
    AsOfSeries out;
    if (finalized_.empty()) return out;
    const auto last_visible = weeks_between(finalized_.start(), predecessor(j));
    if (last_visible < 0) return out;
    const auto n = std::min<std::size_t>(finalized_.size(), static_cast<std::size_t>(last_visible) + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const EpiWeek week = finalized_.week_at(i);
        const auto begin = offsets_[i];
        const auto end = offsets_[i + 1];
        if (begin == end) {
            out.weeks.push_back(week);
            out.values.push_back(finalized_.values()[i]);
            out.origins.push_back(ValueOrigin::finalized);
            out.published.push_back(week);
            continue;
        }
        // Records are sorted by publication week; take the last one visible at j.
        const VintageRecord* best = nullptr;
        for (auto r = begin; r < end && records_[r].published <= j; ++r) best = &records_[r];
        if (best == nullptr) continue;
        out.weeks.push_back(week);
        out.values.push_back(best->value);
        out.origins.push_back(ValueOrigin::revision);
        out.published.push_back(best->published);
    }
    return out;
}

History VintageSeries::history_as_of(const EpiWeek& j) const {
    const AsOfSeries view = as_of(j);
    History h;
    const auto last_visible = weeks_between(finalized_.start(), predecessor(j));
    if (finalized_.empty() || last_visible < 0) {
        h.series = WeeklySeries(finalized_.start(), {}, SeriesUnit::percent);
        return h;
    }
    const auto n = std::min<std::size_t>(finalized_.size(), static_cast<std::size_t>(last_visible) + 1);
    std::vector<double> values(n);
    std::size_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const EpiWeek week = finalized_.week_at(i);
        if (v < view.weeks.size() && view.weeks[v] == week) {
            values[i] = view.values[v++];
        } else {
            values[i] = finalized_.values()[i];
            h.filled_from_finalized.push_back(week);
        }
    }
    h.series = WeeklySeries(finalized_.start(), std::move(values), SeriesUnit::percent);
    return h;
}

History VintageSeries::finalized_history(const EpiWeek& j) const {
    return History{finalized_.truncate_after(predecessor(j)), {}};
}

}  // namespace argo::data
