#include "argo/data/epiweek.hpp"

#include "argo/errors.hpp"

#include <charconv>
#include <cstdio>

namespace argo::data {

namespace {

using namespace std::chrono;

bool is_saturday(Date d) { return weekday{d} == Saturday; }

int parse_int(std::string_view s, std::string_view whole) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw DataError("malformed date '" + std::string(whole) + "'");
    return v;
}

}  // namespace

Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw DataError("malformed date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    const int y = parse_int(text.substr(0, 4), text);
    const int m = parse_int(text.substr(5, 2), text);
    const int d = parse_int(text.substr(8, 2), text);
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw DataError("invalid calendar date '" + std::string(text) + "'");
    return Date{ymd};
}

std::string format_date(Date d) {
    const year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

EpiWeek EpiWeek::make(int year, int week, Date end_date) {
    if (week < 1 || week > 53)
        throw DataError("week number " + std::to_string(week) + " outside 1..53");
    if (!is_saturday(end_date))
        throw DataError("week end date " + format_date(end_date) + " is not a Saturday");
    return EpiWeek{year, week, end_date};
}

std::string EpiWeek::to_string() const {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%04d-W%02d (%s)", year, week, format_date(end_date).c_str());
    return buf;
}

EpiWeek week_ending(Date end_date) {
    if (!is_saturday(end_date))
        throw DataError("week end date " + format_date(end_date) + " is not a Saturday");
    const Date wednesday = end_date - days{3};
    const year_month_day ymd{wednesday};
    const Date jan1 = Date{ymd.year() / January / 1};
    const auto day_of_year = (wednesday - jan1).count();
    return EpiWeek{static_cast<int>(ymd.year()), static_cast<int>(day_of_year / 7) + 1, end_date};
}

EpiWeek week_containing(Date day) {
    const auto offset = (Saturday - weekday{day}).count();
    return week_ending(day + days{offset});
}

EpiWeek successor(const EpiWeek& w) { return advance(w, 1); }

EpiWeek predecessor(const EpiWeek& w) { return advance(w, -1); }

EpiWeek advance(const EpiWeek& w, std::int64_t k) {
    if (k == 0) return w;
    return week_ending(w.end_date + days{7 * k});
}

std::int64_t weeks_between(const EpiWeek& from, const EpiWeek& to) {
    return (to.end_date - from.end_date).count() / 7;
}

}  // namespace argo::data
