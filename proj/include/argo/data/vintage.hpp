#pragma once

#include "argo/data/epiweek.hpp"
#include "argo/data/series.hpp"

#include <vector>

namespace argo::data {

/// One published value: week `target` as reported in week `published`.
struct VintageRecord {
    EpiWeek target;
    EpiWeek published;
    double value = 0.0;
    friend bool operator==(const VintageRecord&, const VintageRecord&) = default;
};

/// Where an as-of value came from.
enum class ValueOrigin {
    revision,   ///< latest record published on or before the query week
    finalized,  ///< week has no revision archive at all; finalized value used
};

/// Sparse as-of view: weeks with no visible data are simply absent.
struct AsOfSeries {
    std::vector<EpiWeek> weeks;
    std::vector<double> values;
    std::vector<ValueOrigin> origins;
    /// For revision values, the publication week of the record used.
    std::vector<EpiWeek> published;
};

/// Gap-free training history plus the weeks that had to be filled from finalized values.
struct History {
    WeeklySeries series;
    std::vector<EpiWeek> filled_from_finalized;
};

/**
 * @brief The revision triangle z(i, j) together with finalized values z(i, inf).
 *
 * Invariants (checked at construction): every record is published at least one
 * week after its target week; a (target, publication) pair occurs at most once;
 * every target week lies inside the finalized series.
 */
class VintageSeries {
public:
    VintageSeries() = default;
    VintageSeries(std::vector<VintageRecord> records, WeeklySeries finalized);

    /// Records sorted by (target, published).
    [[nodiscard]] const std::vector<VintageRecord>& records() const { return records_; }
    [[nodiscard]] const WeeklySeries& finalized() const { return finalized_; }

    /**
     * What was knowable in week j: for each target week i <= j-1, the value with
     * the latest publication week <= j. Weeks without any record in the triangle
     * fall back to the finalized value. Weeks whose records are all published
     * after j are absent.
     */
    [[nodiscard]] AsOfSeries as_of(const EpiWeek& j) const;

    /// as_of(j) made gap-free up to j-1: absent weeks are filled with finalized values and reported.
    [[nodiscard]] History history_as_of(const EpiWeek& j) const;

    /// Finalized values for weeks <= j-1.
    [[nodiscard]] History finalized_history(const EpiWeek& j) const;

private:
    std::vector<VintageRecord> records_;
    WeeklySeries finalized_;
    // For finalized index i: [begin, end) into records_.
    std::vector<std::size_t> offsets_;
};

}  // namespace argo::data
