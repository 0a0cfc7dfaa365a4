#include "argo/eval/metric_table.hpp"

#include "argo/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace argo::eval {

namespace {

bool is_error_metric(Metric m) { return lower_is_better(m); }

std::string fixed3(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
    std::string s(buf, res.ptr);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
}

double parse_number(std::string_view text, const std::string& whole) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw DataError("malformed table cell '" + whole + "'");
    return v;
}

}  // namespace

const MetricCell& MetricTable::at(const std::string& method, const std::string& period, Metric metric) const {
    for (const auto& c : cells)
        if (c.method == method && c.period == period && c.metric == metric) return c;
    throw DataError("metric table has no cell for " + method + "/" + period + "/" + to_string(metric));
}

double MetricTable::reference_value(const std::string& period, Metric metric) const {
    if (!reference) throw DataError("metric table has no reference method");
    return at(*reference, period, metric).value;
}

MetricTable build_metric_table(std::span<const MethodEstimates> methods, const data::WeeklySeries& targets,
                               std::span<const Period> periods, const std::string& reference) {
    MetricTable table;
    for (const auto& m : methods) table.methods.push_back(m.method);
    for (const auto& p : periods) table.periods.push_back(p.name);
    if (!reference.empty() &&
        std::find(table.methods.begin(), table.methods.end(), reference) != table.methods.end())
        table.reference = reference;

    for (const auto& m : methods) {
        for (const auto& p : periods) {
            const PeriodSlice s = slice_period(m.estimates, targets, p);
            for (const Metric metric : kAllMetrics) {
                MetricCell cell;
                cell.method = m.method;
                cell.period = p.name;
                cell.metric = metric;
                cell.value = compute(metric, s.estimates, s.targets);
                table.cells.push_back(std::move(cell));
            }
        }
    }

    for (const auto& p : periods) {
        for (const Metric metric : kAllMetrics) {
            std::vector<MetricCell*> group;
            for (auto& c : table.cells)
                if (c.period == p.name && c.metric == metric) group.push_back(&c);
            if (table.reference && is_error_metric(metric)) {
                const double ref = table.reference_value(p.name, metric);
                if (ref == 0.0)
                    throw DomainError("reference method has zero " + to_string(metric) + " in period " + p.name);
                for (auto* c : group) c->relative = c->value / ref;
            }
            double best = group.front()->value;
            for (const auto* c : group)
                best = lower_is_better(metric) ? std::min(best, c->value) : std::max(best, c->value);
            for (auto* c : group) c->best = c->value == best;
        }
    }
    return table;
}

std::string format_cell(double value, std::optional<double> absolute) {
    std::string s = fixed3(value);
    if (absolute) s += " (" + fixed3(*absolute) + ")";
    return s;
}

ParsedCell parse_cell(const std::string& text) {
    ParsedCell out;
    const auto open = text.find(" (");
    if (open == std::string::npos) {
        out.value = parse_number(text, text);
        return out;
    }
    if (text.back() != ')') throw DataError("malformed table cell '" + text + "'");
    out.value = parse_number(std::string_view(text).substr(0, open), text);
    out.absolute = parse_number(std::string_view(text).substr(open + 2, text.size() - open - 3), text);
    return out;
}

}  // namespace argo::eval
