#include "argo/io/csv.hpp"

#include "argo/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace argo::io {

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw DataError(source + ": missing column '" + std::string(name) + "'");
}

void CsvTable::expect_prefix(const std::vector<std::string>& expected) const {
    bool ok = header.size() >= expected.size();
    for (std::size_t i = 0; ok && i < expected.size(); ++i) ok = header[i] == expected[i];
    if (!ok) {
        std::string want;
        for (const auto& e : expected) want += (want.empty() ? "" : ",") + e;
        throw DataError(source + ": line 1: header must start with '" + want + "'");
    }
}

CsvTable parse_csv(std::string_view text, const std::string& source) {
    CsvTable table;
    table.source = source;
    std::size_t line = 1;
    std::size_t pos = 0;
    bool have_header = false;

    while (pos < text.size()) {
        const std::size_t row_line = line;
        std::vector<std::string> fields;
        std::string field;
        bool quoted = false;
        bool end_of_row = false;
        while (!end_of_row && pos < text.size()) {
            const char c = text[pos++];
            if (quoted) {
                if (c == '"') {
                    if (pos < text.size() && text[pos] == '"') {
                        field += '"';
                        ++pos;
                    } else {
                        quoted = false;
                    }
                } else {
                    if (c == '\n') ++line;
                    field += c;
                }
                continue;
            }
            switch (c) {
                case '"':
                    if (!field.empty())
                        throw DataError(source + ": line " + std::to_string(line) + ": stray quote");
                    quoted = true;
                    break;
                case ',':
                    fields.push_back(std::move(field));
                    field.clear();
                    break;
                case '\r':
                    if (pos < text.size() && text[pos] == '\n') break;
                    field += c;
                    break;
                case '\n':
                    ++line;
                    end_of_row = true;
                    break;
                default:
                    field += c;
            }
        }
        if (quoted) throw DataError(source + ": line " + std::to_string(row_line) + ": unterminated quote");
        fields.push_back(std::move(field));
        if (fields.size() == 1 && fields.front().empty()) continue;
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size())
            throw DataError(source + ": line " + std::to_string(row_line) + ": expected " +
                            std::to_string(table.header.size()) + " fields, found " + std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
        table.lines.push_back(row_line);
    }
    if (!have_header) throw DataError(source + ": empty file");
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path), path.string()); }

namespace {

std::string_view trim(std::string_view t) {
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    return t;
}

}  // namespace

double parse_double(std::string_view text, const std::string& where) {
    std::string_view t = trim(text);
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size() || !std::isfinite(v))
        throw DataError(where + ": not a finite number: '" + std::string(text) + "'");
    return v;
}

long long parse_integer(std::string_view text, const std::string& where) {
    const std::string_view t = trim(text);
    long long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw DataError(where + ": not an integer: '" + std::string(text) + "'");
    return v;
}

std::string format_exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_significant(double v, int digits) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
    return std::string(buf, res.ptr);
}

std::string escape_field(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) { add_row(header); }

void CsvWriter::add_row(const std::vector<std::string>& fields) {
    if (fields.size() != width_) throw DataError("csv writer: row width does not match header");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) text_ += ',';
        text_ += escape_field(fields[i]);
    }
    text_ += '\n';
}

void CsvWriter::write(const std::filesystem::path& path) const { write_text(path, text_); }

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw DataError("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace argo::io
