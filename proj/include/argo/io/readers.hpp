#pragma once

#include "argo/data/series.hpp"
#include "argo/data/vintage.hpp"

#include <filesystem>
#include <vector>

namespace argo::io {

// Weekly files start with `year,week,end_date`. Rows must be strictly
// consecutive weeks; a gap is reported with the label of the first missing week.

/// `year,week,end_date,wili`; wili in percent, strictly inside (0, 100).
[[nodiscard]] data::WeeklySeries read_ili_csv(const std::filesystem::path& path);
void write_ili_csv(const std::filesystem::path& path, const data::WeeklySeries& series);

/// `year,week,end_date,<term1>,...,<termK>`. Correlate columns are rescaled to [0, 100]
/// on ingestion; trends cells must be integers in [0, 100]; scaled cells reals in [0, 100].
[[nodiscard]] data::SearchPanel read_panel_csv(const std::filesystem::path& path, data::SearchSource source);
/// Writes the frequency-scale cells as they are (rescaled values for correlate panels).
void write_panel_csv(const std::filesystem::path& path, const data::SearchPanel& panel);

/// External estimate series `year,week,end_date,<value>` (any finite values; percent scale).
[[nodiscard]] data::WeeklySeries read_gft_csv(const std::filesystem::path& path);
void write_gft_csv(const std::filesystem::path& path, const data::WeeklySeries& series);

/**
 * Revision archive `target_year,target_week,pub_year,pub_week,wili` plus the
 * finalized series in ILI format. Week labels are resolved against the
 * finalized series and its continuation by weekly succession.
 */
[[nodiscard]] data::VintageSeries read_vintage_csv(const std::filesystem::path& revisions,
                                                   const std::filesystem::path& finalized);
/// Writes the revision records only; the finalized series goes through write_ili_csv.
void write_vintage_csv(const std::filesystem::path& path, const data::VintageSeries& vintage);

/// Column `error` of a CSV file (other columns are ignored).
[[nodiscard]] std::vector<double> read_error_csv(const std::filesystem::path& path);

}  // namespace argo::io
