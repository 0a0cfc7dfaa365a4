#pragma once

#include "argo/data/epiweek.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace argo::data {

/// Unit tag of a weekly series.
enum class SeriesUnit {
    percent,  ///< ILI activity as published (1.8 means 1.8%); values in (0, 100)
    logit,    ///< logit of the proportion
    free,     ///< any finite scale (e.g. an external estimate series)
};

/// Inclusive range of consecutive weeks.
struct WeekRange {
    EpiWeek first;
    EpiWeek last;

    [[nodiscard]] std::size_t size() const {
        return static_cast<std::size_t>(weeks_between(first, last) + 1);
    }
    [[nodiscard]] bool contains(const EpiWeek& w) const { return first <= w && w <= last; }
};

/// Intersection of two ranges, or nullopt when they are disjoint.
[[nodiscard]] std::optional<WeekRange> intersect(const WeekRange& a, const WeekRange& b);

/**
 * @brief Gap-free weekly scalar series; value k belongs to week start+k.
 *
 * Immutable after construction. Percent-unit series are validated to lie
 * strictly inside (0, 100) so that the logit transform is always defined.
 */
class WeeklySeries {
public:
    WeeklySeries() = default;
    WeeklySeries(EpiWeek start, std::vector<double> values, SeriesUnit unit);

    [[nodiscard]] const EpiWeek& start() const { return start_; }
    [[nodiscard]] EpiWeek last() const;
    [[nodiscard]] WeekRange range() const { return {start_, last()}; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] bool empty() const { return values_.empty(); }
    [[nodiscard]] SeriesUnit unit() const { return unit_; }
    [[nodiscard]] std::span<const double> values() const { return values_; }

    [[nodiscard]] EpiWeek week_at(std::size_t k) const { return advance(start_, static_cast<std::int64_t>(k)); }
    [[nodiscard]] std::optional<std::size_t> index_of(const EpiWeek& w) const;
    [[nodiscard]] bool contains(const EpiWeek& w) const { return index_of(w).has_value(); }
    /// Value at week w; throws DataError if w is outside the series.
    [[nodiscard]] double at(const EpiWeek& w) const;

    /// Restriction to `r`, which must lie inside the series.
    [[nodiscard]] WeeklySeries slice(const WeekRange& r) const;
    /// Weeks up to and including `w` (empty when w precedes the start).
    [[nodiscard]] WeeklySeries truncate_after(const EpiWeek& w) const;

    friend bool operator==(const WeeklySeries&, const WeeklySeries&) = default;

private:
    EpiWeek start_{};
    std::vector<double> values_;
    SeriesUnit unit_ = SeriesUnit::free;
};

/// Provenance of search-frequency columns.
enum class SearchSource {
    correlate,  ///< standardized reals, rescaled to [0, 100] at ingestion
    trends,     ///< integers in [0, 100]
    scaled,     ///< reals already on the [0, 100] scale (synthetic data)
};

[[nodiscard]] std::string to_string(SearchSource s);
[[nodiscard]] SearchSource parse_search_source(const std::string& s);

/// Whether panel cells are raw frequencies or log-transformed.
enum class PanelScale { frequency, log };

/// First week contributed by each source when panels are concatenated in time.
struct PanelSegment {
    EpiWeek first;
    SearchSource source;
    friend bool operator==(const PanelSegment&, const PanelSegment&) = default;
};

/**
 * @brief Rectangular week-by-term matrix of search frequencies.
 *
 * Row k belongs to week start+k. Frequency-scale cells must lie in [0, 100]
 * (trends cells additionally integral); log-scale cells must be finite.
 */
class SearchPanel {
public:
    SearchPanel() = default;
    SearchPanel(EpiWeek start, std::vector<std::string> terms, Eigen::MatrixXd rows,
                SearchSource source, PanelScale scale = PanelScale::frequency);

    [[nodiscard]] const EpiWeek& start() const { return start_; }
    [[nodiscard]] EpiWeek last() const;
    [[nodiscard]] WeekRange range() const { return {start_, last()}; }
    [[nodiscard]] std::size_t weeks() const { return static_cast<std::size_t>(rows_.rows()); }
    [[nodiscard]] std::size_t term_count() const { return terms_.size(); }
    [[nodiscard]] const std::vector<std::string>& terms() const { return terms_; }
    [[nodiscard]] const Eigen::MatrixXd& rows() const { return rows_; }
    [[nodiscard]] SearchSource source() const { return segments_.front().source; }
    [[nodiscard]] PanelScale scale() const { return scale_; }
    [[nodiscard]] const std::vector<PanelSegment>& segments() const { return segments_; }

    [[nodiscard]] std::optional<std::size_t> index_of(const EpiWeek& w) const;
    /// Row for week w; throws DataError when absent.
    [[nodiscard]] Eigen::VectorXd row(const EpiWeek& w) const;

    [[nodiscard]] SearchPanel slice(const WeekRange& r) const;
    /// Same panel with every cell mapped through `fn`, tagged with `scale`.
    template <class Fn>
    [[nodiscard]] SearchPanel map_cells(Fn&& fn, PanelScale scale) const {
        SearchPanel out = *this;
        out.rows_ = rows_.unaryExpr(fn);
        out.scale_ = scale;
        out.validate();
        return out;
    }

    friend bool operator==(const SearchPanel& a, const SearchPanel& b) {
        return a.start_ == b.start_ && a.terms_ == b.terms_ && a.rows_ == b.rows_ &&
               a.scale_ == b.scale_ && a.segments_ == b.segments_;
    }

    /// Appends `later`, which must start the week after this panel ends and carry the same terms.
    friend SearchPanel concatenate(const SearchPanel& earlier, const SearchPanel& later);

private:
    void validate() const;

    EpiWeek start_{};
    std::vector<std::string> terms_;
    Eigen::MatrixXd rows_;
    PanelScale scale_ = PanelScale::frequency;
    std::vector<PanelSegment> segments_;
};

SearchPanel concatenate(const SearchPanel& earlier, const SearchPanel& later);

/// Series and panels restricted to the intersection of their week ranges.
struct Aligned {
    std::vector<WeeklySeries> series;
    std::vector<SearchPanel> panels;
    WeekRange range;
};

/// Throws DataError("empty intersection") when the inputs share no week.
[[nodiscard]] Aligned align(std::span<const WeeklySeries> series, std::span<const SearchPanel> panels);

}  // namespace argo::data
