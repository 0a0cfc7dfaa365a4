#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace argo {
class Rng;
}

namespace argo::eval {

struct BootstrapConfig {
    double mean_block_length = 52.0;
    std::size_t replicates = 10000;
    double level = 0.95;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    void validate() const;
};

/// Relative efficiency of method 1 over method 2 with a stationary-bootstrap interval.
struct EfficiencyEstimate {
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t replicates = 0;
    double mean_block_length = 0.0;
    double level = 0.0;
    std::uint64_t seed = 0;
    std::size_t discarded = 0;  ///< degenerate (zero-MSE) replicates redrawn
};

/**
 * Index sequence of one stationary-bootstrap pseudo-series of length n: blocks
 * start uniformly in [0, n), have geometric lengths with mean
 * `mean_block_length`, wrap around circularly, and the last block is truncated
 * at n.
 */
[[nodiscard]] std::vector<std::size_t> stationary_indices(std::size_t n, double mean_block_length, Rng& rng);

/// Empirical quantile with linear interpolation between order statistics (`sorted` ascending).
[[nodiscard]] double quantile_sorted(std::span<const double> sorted, double prob);

/**
 * Basic bootstrap interval for the relative efficiency MSE(errors2) / MSE(errors1).
 *
 * The two error series are resampled jointly, as pairs, so that their serial and
 * cross correlation is retained. The interval is formed on the log scale as
 * [2 log e - q_hi, 2 log e - q_lo] and exponentiated. Replicate r draws from
 * substream(seed, r), so results do not depend on the thread count. A replicate
 * with zero MSE in either series is redrawn from the same stream; more than
 * 10 x replicates redraws in total raise DomainError.
 */
[[nodiscard]] EfficiencyEstimate stationary_bootstrap_ci(std::span<const double> errors1,
                                                         std::span<const double> errors2,
                                                         const BootstrapConfig& config);

/// Log relative efficiency of every replicate, in replicate order (exposed for testing).
[[nodiscard]] std::vector<double> bootstrap_log_ratios(std::span<const double> errors1,
                                                       std::span<const double> errors2,
                                                       const BootstrapConfig& config,
                                                       std::size_t* discarded = nullptr);

}  // namespace argo::eval
