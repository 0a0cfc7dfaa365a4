#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace argo::io {

/// Parsed CSV: a header and data rows, with the 1-based source line of every row.
struct CsvTable {
    std::string source;  ///< file name used in error messages
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;

    /// Column position by name; throws DataError when absent.
    [[nodiscard]] std::size_t column(std::string_view name) const;
    /// Throws DataError unless the header starts with `expected`.
    void expect_prefix(const std::vector<std::string>& expected) const;
};

/// RFC 4180 style: comma separated, optional double quotes with "" escapes, LF or CRLF.
/// Blank lines are skipped. Every row must have as many fields as the header.
[[nodiscard]] CsvTable parse_csv(std::string_view text, const std::string& source);
[[nodiscard]] CsvTable read_csv(const std::filesystem::path& path);

/// Locale-independent number parsing; `where` prefixes the error message.
[[nodiscard]] double parse_double(std::string_view text, const std::string& where);
[[nodiscard]] long long parse_integer(std::string_view text, const std::string& where);

/// Shortest text that reads back to exactly `v`.
[[nodiscard]] std::string format_exact(double v);
/// `digits` significant digits.
[[nodiscard]] std::string format_significant(double v, int digits = 6);

/// Quotes a field if it contains a comma, quote or newline.
[[nodiscard]] std::string escape_field(std::string_view field);

/// Accumulates rows and writes them with LF line endings.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<std::string>& fields);
    [[nodiscard]] std::string str() const { return text_; }
    void write(const std::filesystem::path& path) const;

private:
    std::size_t width_;
    std::string text_;
};

/// Writes `text` to `path`, throwing DataError on failure.
void write_text(const std::filesystem::path& path, std::string_view text);
/// Whole file as a string, throwing DataError on failure.
[[nodiscard]] std::string read_text(const std::filesystem::path& path);

}  // namespace argo::io
