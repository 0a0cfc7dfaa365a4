#include "argo/io/readers.hpp"

#include "argo/errors.hpp"
#include "argo/io/csv.hpp"
#include "argo/transforms/transforms.hpp"

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace argo::io {

namespace {

const std::vector<std::string> kWeekColumns{"year", "week", "end_date"};

std::string where(const CsvTable& t, std::size_t row) {
    return t.source + ": line " + std::to_string(t.lines[row]);
}

data::EpiWeek parse_week(const CsvTable& t, std::size_t row) {
    const auto& f = t.rows[row];
    const std::string at = where(t, row);
    try {
        return data::EpiWeek::make(static_cast<int>(parse_integer(f[0], at)),
                                   static_cast<int>(parse_integer(f[1], at)), data::parse_date(f[2]));
    } catch (const DataError& e) {
        const std::string msg = e.what();
        if (msg.rfind(at, 0) == 0) throw;
        throw DataError(at + ": " + msg);
    }
}

/// Weeks of every row, checked to be consecutive.
std::vector<data::EpiWeek> consecutive_weeks(const CsvTable& t) {
    t.expect_prefix(kWeekColumns);
    if (t.rows.empty()) throw DataError(t.source + ": no data rows");
    std::vector<data::EpiWeek> weeks;
    weeks.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const data::EpiWeek w = parse_week(t, r);
        if (!weeks.empty()) {
            const data::EpiWeek expected = data::successor(weeks.back());
            if (w.end_date > expected.end_date)
                throw DataError(where(t, r) + ": gap, week " + std::to_string(expected.year) + "-W" +
                                std::to_string(expected.week) + " (ending " + data::format_date(expected.end_date) +
                                ") is missing");
            if (w.end_date < expected.end_date)
                throw DataError(where(t, r) + ": week " + w.to_string() + " is out of order or repeated");
            if (!(w == expected))
                throw DataError(where(t, r) + ": week label " + std::to_string(w.year) + "-W" +
                                std::to_string(w.week) + " does not follow " + weeks.back().to_string() +
                                " (expected " + expected.to_string() + ")");
        }
        weeks.push_back(w);
    }
    return weeks;
}

std::vector<std::string> week_fields(const data::EpiWeek& w) {
    return {std::to_string(w.year), std::to_string(w.week), data::format_date(w.end_date)};
}

data::WeeklySeries read_weekly_value(const std::filesystem::path& path, const std::string& column,
                                     data::SeriesUnit unit) {
    const CsvTable t = read_csv(path);
    const auto weeks = consecutive_weeks(t);
    if (t.header.size() != 4 || (!column.empty() && t.header[3] != column))
        throw DataError(t.source + ": line 1: expected header year,week,end_date," +
                        (column.empty() ? std::string("<value>") : column));
    std::vector<double> values(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        values[r] = parse_double(t.rows[r][3], where(t, r));
        if (unit == data::SeriesUnit::percent && !(values[r] > 0.0 && values[r] < 100.0))
            throw DataError(where(t, r) + ": wili " + t.rows[r][3] + " outside (0, 100)");
    }
    return data::WeeklySeries(weeks.front(), std::move(values), unit);
}

void write_weekly_value(const std::filesystem::path& path, const data::WeeklySeries& s, const std::string& column) {
    auto header = kWeekColumns;
    header.push_back(column);
    CsvWriter out(header);
    for (std::size_t k = 0; k < s.size(); ++k) {
        auto f = week_fields(s.week_at(k));
        f.push_back(format_exact(s.values()[k]));
        out.add_row(f);
    }
    out.write(path);
}

}  // namespace

data::WeeklySeries read_ili_csv(const std::filesystem::path& path) {
    return read_weekly_value(path, "wili", data::SeriesUnit::percent);
}

void write_ili_csv(const std::filesystem::path& path, const data::WeeklySeries& series) {
    write_weekly_value(path, series, "wili");
}

data::WeeklySeries read_gft_csv(const std::filesystem::path& path) {
    return read_weekly_value(path, "", data::SeriesUnit::free);
}

void write_gft_csv(const std::filesystem::path& path, const data::WeeklySeries& series) {
    write_weekly_value(path, series, "gft");
}

data::SearchPanel read_panel_csv(const std::filesystem::path& path, data::SearchSource source) {
    const CsvTable t = read_csv(path);
    const auto weeks = consecutive_weeks(t);
    std::vector<std::string> terms(t.header.begin() + 3, t.header.end());
    std::set<std::string> seen;
    for (const auto& term : terms) {
        if (term.empty()) throw DataError(t.source + ": line 1: empty term name");
        if (!seen.insert(term).second) throw DataError(t.source + ": line 1: duplicate term name '" + term + "'");
    }
    Eigen::MatrixXd cells(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(terms.size()));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t j = 0; j < terms.size(); ++j) {
            const std::string& text = t.rows[r][j + 3];
            const std::string at = where(t, r) + ", term '" + terms[j] + "'";
            double v = 0.0;
            if (source == data::SearchSource::trends) {
                v = static_cast<double>(parse_integer(text, at));
            } else {
                v = parse_double(text, at);
            }
            if (source != data::SearchSource::correlate && (v < 0.0 || v > 100.0))
                throw DataError(at + ": value " + text + " outside [0, 100]");
            cells(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = v;
        }
    }
    if (source == data::SearchSource::correlate) {
        try {
            cells = transforms::rescale_columns(cells);
        } catch (const DomainError& e) {
            throw DataError(t.source + ": " + e.what());
        }
    }
    return data::SearchPanel(weeks.front(), std::move(terms), std::move(cells), source);
}

void write_panel_csv(const std::filesystem::path& path, const data::SearchPanel& panel) {
    if (panel.scale() != data::PanelScale::frequency) throw DataError("only frequency-scale panels are written");
    auto header = kWeekColumns;
    header.insert(header.end(), panel.terms().begin(), panel.terms().end());
    CsvWriter out(header);
    for (std::size_t k = 0; k < panel.weeks(); ++k) {
        auto f = week_fields(data::advance(panel.start(), static_cast<std::int64_t>(k)));
        for (Eigen::Index j = 0; j < panel.rows().cols(); ++j)
            f.push_back(format_exact(panel.rows()(static_cast<Eigen::Index>(k), j)));
        out.add_row(f);
    }
    out.write(path);
}

data::VintageSeries read_vintage_csv(const std::filesystem::path& revisions, const std::filesystem::path& finalized) {
    data::WeeklySeries fin = read_ili_csv(finalized);
    const CsvTable t = read_csv(revisions);
    t.expect_prefix({"target_year", "target_week", "pub_year", "pub_week", "wili"});
    if (t.header.size() != 5) throw DataError(t.source + ": line 1: unexpected extra columns");

    int max_year = fin.last().year;
    std::vector<std::array<long long, 4>> labels(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t c = 0; c < 4; ++c) labels[r][c] = parse_integer(t.rows[r][c], where(t, r));
        max_year = std::max<int>(max_year, static_cast<int>(labels[r][2]));
    }
    std::map<std::pair<long long, long long>, data::EpiWeek> by_label;
    for (data::EpiWeek w = fin.start(); w.year <= max_year; w = data::successor(w))
        by_label.emplace(std::pair<long long, long long>{w.year, w.week}, w);

    std::vector<data::VintageRecord> records;
    records.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto lookup = [&](long long year, long long week, const char* what) {
            const auto it = by_label.find({year, week});
            if (it == by_label.end())
                throw DataError(where(t, r) + ": " + what + " week " + std::to_string(year) + "-W" +
                                std::to_string(week) + " is not in the calendar of the finalized series");
            return it->second;
        };
        data::VintageRecord rec;
        rec.target = lookup(labels[r][0], labels[r][1], "target");
        rec.published = lookup(labels[r][2], labels[r][3], "publication");
        rec.value = parse_double(t.rows[r][4], where(t, r));
        if (!(rec.value > 0.0 && rec.value < 100.0))
            throw DataError(where(t, r) + ": wili " + t.rows[r][4] + " outside (0, 100)");
        records.push_back(rec);
    }
    try {
        return data::VintageSeries(std::move(records), std::move(fin));
    } catch (const DataError& e) {
        throw DataError(t.source + ": " + e.what());
    }
}

void write_vintage_csv(const std::filesystem::path& path, const data::VintageSeries& vintage) {
    CsvWriter out({"target_year", "target_week", "pub_year", "pub_week", "wili"});
    for (const auto& rec : vintage.records())
        out.add_row({std::to_string(rec.target.year), std::to_string(rec.target.week),
                     std::to_string(rec.published.year), std::to_string(rec.published.week),
                     format_exact(rec.value)});
    out.write(path);
}

std::vector<double> read_error_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    const std::size_t col = t.column("error");
    std::vector<double> out(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) out[r] = parse_double(t.rows[r][col], where(t, r));
    return out;
}

}  // namespace argo::io
