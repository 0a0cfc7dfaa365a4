#include "argo/data/series.hpp"

#include "argo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace argo::data {

std::optional<WeekRange> intersect(const WeekRange& a, const WeekRange& b) {
    const EpiWeek& first = std::max(a.first, b.first);
    const EpiWeek& last = std::min(a.last, b.last);
    if (last < first) return std::nullopt;
    return WeekRange{first, last};
}

// ---------------------------------------------------------------------------
// WeeklySeries

WeeklySeries::WeeklySeries(EpiWeek start, std::vector<double> values, SeriesUnit unit)
    : start_(start), values_(std::move(values)), unit_(unit) {
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const double v = values_[k];
        if (!std::isfinite(v))
            throw DataError("non-finite value in weekly series at " + week_at(k).to_string());
        if (unit_ == SeriesUnit::percent && !(v > 0.0 && v < 100.0))
            throw DataError("percent value " + std::to_string(v) + " outside (0, 100) at " +
                            week_at(k).to_string());
    }
}

EpiWeek WeeklySeries::last() const {
    if (values_.empty()) throw DataError("empty weekly series has no last week");
    return week_at(values_.size() - 1);
}

std::optional<std::size_t> WeeklySeries::index_of(const EpiWeek& w) const {
    const auto k = weeks_between(start_, w);
    if (k < 0 || static_cast<std::size_t>(k) >= values_.size()) return std::nullopt;
    return static_cast<std::size_t>(k);
}

double WeeklySeries::at(const EpiWeek& w) const {
    const auto k = index_of(w);
    if (!k) throw DataError("week " + w.to_string() + " outside series");
    return values_[*k];
}

WeeklySeries WeeklySeries::slice(const WeekRange& r) const {
    const auto a = index_of(r.first);
    const auto b = index_of(r.last);
    if (!a || !b || *b < *a) throw DataError("slice range outside series");
    return WeeklySeries(r.first, {values_.begin() + *a, values_.begin() + *b + 1}, unit_);
}

WeeklySeries WeeklySeries::truncate_after(const EpiWeek& w) const {
    const auto k = weeks_between(start_, w);
    if (k < 0) return WeeklySeries(start_, {}, unit_);
    const auto n = std::min<std::size_t>(values_.size(), static_cast<std::size_t>(k) + 1);
    return WeeklySeries(start_, {values_.begin(), values_.begin() + n}, unit_);
}

// ---------------------------------------------------------------------------
// SearchPanel

std::string to_string(SearchSource s) {
    switch (s) {
        case SearchSource::correlate: return "correlate";
        case SearchSource::trends: return "trends";
        case SearchSource::scaled: return "scaled";
    }
    return "unknown";
}

SearchSource parse_search_source(const std::string& s) {
    if (s == "correlate") return SearchSource::correlate;
    if (s == "trends") return SearchSource::trends;
    if (s == "scaled") return SearchSource::scaled;
    throw ConfigError("unknown search source '" + s + "' (expected correlate, trends or scaled)");
}

SearchPanel::SearchPanel(EpiWeek start, std::vector<std::string> terms, Eigen::MatrixXd rows,
                         SearchSource source, PanelScale scale)
    : start_(start), terms_(std::move(terms)), rows_(std::move(rows)), scale_(scale),
      segments_{{start, source}} {
    validate();
}

void SearchPanel::validate() const {
    if (static_cast<std::size_t>(rows_.cols()) != terms_.size())
        throw DataError("panel has " + std::to_string(rows_.cols()) + " columns but " +
                        std::to_string(terms_.size()) + " term names");
    std::set<std::string> seen;
    for (const auto& t : terms_)
        if (!seen.insert(t).second) throw DataError("duplicate term name '" + t + "'");

    for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
        const EpiWeek w = advance(start_, i);
        SearchSource src = segments_.front().source;
        for (const auto& seg : segments_)
            if (seg.first <= w) src = seg.source;
        for (Eigen::Index j = 0; j < rows_.cols(); ++j) {
            const double v = rows_(i, j);
            if (!std::isfinite(v))
                throw DataError("non-finite panel value for term '" + terms_[j] + "' at " + w.to_string());
            if (scale_ != PanelScale::frequency) continue;
            if (v < 0.0 || v > 100.0)
                throw DataError("search frequency " + std::to_string(v) + " outside [0, 100] for term '" +
                                terms_[j] + "' at " + w.to_string());
            if (src == SearchSource::trends && v != std::floor(v))
                throw DataError("trends value " + std::to_string(v) + " is not an integer for term '" +
                                terms_[j] + "' at " + w.to_string());
        }
    }
}

EpiWeek SearchPanel::last() const {
    if (rows_.rows() == 0) throw DataError("empty panel has no last week");
    return advance(start_, rows_.rows() - 1);
}

std::optional<std::size_t> SearchPanel::index_of(const EpiWeek& w) const {
    const auto k = weeks_between(start_, w);
    if (k < 0 || k >= rows_.rows()) return std::nullopt;
    return static_cast<std::size_t>(k);
}

Eigen::VectorXd SearchPanel::row(const EpiWeek& w) const {
    const auto k = index_of(w);
    if (!k) throw DataError("week " + w.to_string() + " outside search panel");
    return rows_.row(static_cast<Eigen::Index>(*k)).transpose();
}

SearchPanel SearchPanel::slice(const WeekRange& r) const {
    const auto a = index_of(r.first);
    const auto b = index_of(r.last);
    if (!a || !b || *b < *a) throw DataError("slice range outside search panel");
    SearchPanel out = *this;
    out.start_ = r.first;
    out.rows_ = rows_.middleRows(static_cast<Eigen::Index>(*a), static_cast<Eigen::Index>(*b - *a + 1));
    out.segments_.clear();
    for (const auto& seg : segments_) {
        if (seg.first <= r.first)
            out.segments_.assign(1, PanelSegment{r.first, seg.source});
        else if (seg.first <= r.last)
            out.segments_.push_back(seg);
    }
    return out;
}

SearchPanel concatenate(const SearchPanel& earlier, const SearchPanel& later) {
    if (earlier.terms_ != later.terms_)
        throw DataError("cannot concatenate panels with different term lists");
    if (earlier.scale_ != later.scale_) throw DataError("cannot concatenate panels on different scales");
    if (later.start_ != successor(earlier.last()))
        throw DataError("panel starting " + later.start_.to_string() + " does not follow panel ending " +
                        earlier.last().to_string());
    SearchPanel out = earlier;
    out.rows_.resize(earlier.rows_.rows() + later.rows_.rows(), earlier.rows_.cols());
    out.rows_ << earlier.rows_, later.rows_;
    for (const auto& seg : later.segments_) out.segments_.push_back(seg);
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------

Aligned align(std::span<const WeeklySeries> series, std::span<const SearchPanel> panels) {
    std::optional<WeekRange> common;
    auto fold = [&](const WeekRange& r) {
        if (!common) {
            common = r;
            return;
        }
        common = intersect(*common, r);
        if (!common) throw DataError("empty intersection of input date ranges");
    };
    for (const auto& s : series) {
        if (s.empty()) throw DataError("empty intersection of input date ranges");
        fold(s.range());
    }
    for (const auto& p : panels) {
        if (p.weeks() == 0) throw DataError("empty intersection of input date ranges");
        fold(p.range());
    }
    if (!common) throw DataError("align: no inputs");

    Aligned out{{}, {}, *common};
    for (const auto& s : series) out.series.push_back(s.slice(*common));
    for (const auto& p : panels) out.panels.push_back(p.slice(*common));
    return out;
}

}  // namespace argo::data
