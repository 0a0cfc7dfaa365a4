#pragma once

#include "argo/data/series.hpp"
#include "argo/data/vintage.hpp"
#include "argo/models/hmm.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

namespace argo::io {

/**
 * Parameters of a simulated study: an AR(N) logit series and K search terms
 * drawn as X_t | y_t ~ N(mu_x + y_t beta, Q).
 */
struct SyntheticSpec {
    std::size_t weeks = 400;
    double mu_y = 0.0;
    Eigen::VectorXd alpha;  ///< N lag coefficients
    double sigma2 = 1.0;
    Eigen::VectorXd mu_x;   ///< K
    Eigen::VectorXd beta;   ///< K
    Eigen::MatrixXd q;      ///< K x K, positive definite
    std::uint64_t seed = 0;
    data::Date first_week_end = data::parse_date("2004-01-03");
    std::size_t burn_in = 500;
    double delta = 0.5;  ///< search frequencies are exp(X) - delta, clamped to [0, 100]

    [[nodiscard]] std::size_t lags() const { return static_cast<std::size_t>(alpha.size()); }
    [[nodiscard]] std::size_t terms() const { return static_cast<std::size_t>(beta.size()); }
    [[nodiscard]] models::HmmParams hmm() const;
    /// Shapes, positive sigma2, positive definite Q, and stationarity of the AR
    /// polynomial (all companion eigenvalues strictly inside the unit circle).
    /// Throws ConfigError.
    void validate() const;
};

/// Planted values alongside the simulated files.
struct SyntheticTruth {
    models::HmmParams params;
    std::uint64_t seed = 0;
    data::WeeklySeries y_logit;
    Eigen::MatrixXd x_log;  ///< before clamping
    std::size_t clamped_cells = 0;
};

struct SyntheticData {
    data::VintageSeries ili;  ///< finalized series only, no revisions
    data::SearchPanel panel;  ///< frequency scale, source `scaled`
    SyntheticTruth truth;
};

/// Term names term_001, term_002, ... (zero padded to the width of K).
[[nodiscard]] std::vector<std::string> synthetic_term_names(std::size_t k);

/// Simulates burn_in + weeks steps of the AR recursion from its stationary mean,
/// discards the burn-in, then draws X row by row. Deterministic for a fixed seed.
[[nodiscard]] SyntheticData generate_synthetic(const SyntheticSpec& spec);

/**
 * Reads a JSON spec. Vectors (`alpha`, `mu_x`, `beta`) are given either as full
 * arrays or as objects mapping 1-based indices to the nonzero entries, with
 * `lags` and `terms` fixing the lengths; `mu_x` may be a scalar. `q` is a scalar
 * (multiple of I), an array (diagonal) or an array of rows.
 */
[[nodiscard]] SyntheticSpec read_synthetic_spec(const std::filesystem::path& path);
[[nodiscard]] SyntheticSpec parse_synthetic_spec(const std::string& json_text);

/// Writes ili.csv, revisions.csv (header only), panel.csv and truth.json into `dir`.
void write_synthetic(const std::filesystem::path& dir, const SyntheticData& data);

/// truth.json content.
[[nodiscard]] std::string truth_json(const SyntheticData& data);

}  // namespace argo::io
