#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace argo::data {

using Date = std::chrono::sys_days;

/// Parses an ISO date `YYYY-MM-DD`. Throws DataError on malformed or impossible dates.
[[nodiscard]] Date parse_date(std::string_view text);
[[nodiscard]] std::string format_date(Date d);

/**
 * @brief An epidemiological (MMWR) week: Sunday through Saturday.
 *
 * Labels are carried verbatim from input files. Weekly succession advances the
 * end date by seven days and rolls the label into week 1 of the next year when
 * the new week's Wednesday falls in the next calendar year (a week belongs to
 * the year holding at least four of its days).
 */
struct EpiWeek {
    int year = 0;
    int week = 0;
    Date end_date{};

    /// Validates week in 1..53 and that end_date is a Saturday.
    static EpiWeek make(int year, int week, Date end_date);

    friend bool operator==(const EpiWeek& a, const EpiWeek& b) {
        return a.end_date == b.end_date && a.year == b.year && a.week == b.week;
    }
    friend std::strong_ordering operator<=>(const EpiWeek& a, const EpiWeek& b) {
        return a.end_date <=> b.end_date;
    }

    /// "2015-W07 (2015-02-21)"
    [[nodiscard]] std::string to_string() const;
};

[[nodiscard]] EpiWeek successor(const EpiWeek& w);
[[nodiscard]] EpiWeek predecessor(const EpiWeek& w);

/// Moves `k` weeks forward (negative k moves backwards).
[[nodiscard]] EpiWeek advance(const EpiWeek& w, std::int64_t k);

/// Signed number of weeks from `from` to `to`.
[[nodiscard]] std::int64_t weeks_between(const EpiWeek& from, const EpiWeek& to);

/// The week whose Saturday is `end_date`, labelled by the succession rule above.
[[nodiscard]] EpiWeek week_ending(Date end_date);

/// The week (Sunday..Saturday) containing `day`.
[[nodiscard]] EpiWeek week_containing(Date day);

}  // namespace argo::data
