#include "argo/eval/bootstrap.hpp"

#include "argo/errors.hpp"
#include "argo/eval/metrics.hpp"
#include "argo/parallel.hpp"
#include "argo/rng.hpp"

#include <algorithm>
#include <cmath>

namespace argo::eval {

void BootstrapConfig::validate() const {
    if (!(mean_block_length >= 1.0)) throw ConfigError("mean block length must be >= 1");
    if (replicates < 2) throw ConfigError("bootstrap needs at least 2 replicates");
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("confidence level must lie in (0, 1)");
}

std::vector<std::size_t> stationary_indices(std::size_t n, double mean_block_length, Rng& rng) {
    std::vector<std::size_t> idx;
    idx.reserve(n);
    const double p = 1.0 / mean_block_length;
    while (idx.size() < n) {
        const std::size_t start = rng.uniform_index(n);
        const std::uint64_t length = rng.geometric(p);
        for (std::uint64_t k = 0; k < length && idx.size() < n; ++k) idx.push_back((start + k) % n);
    }
    return idx;
}

double quantile_sorted(std::span<const double> sorted, double prob) {
    if (sorted.empty()) throw DomainError("quantile of an empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> bootstrap_log_ratios(std::span<const double> errors1, std::span<const double> errors2,
                                         const BootstrapConfig& config, std::size_t* discarded) {
    config.validate();
    const std::size_t n = errors1.size();
    if (errors2.size() != n) throw DataError("bootstrap: error series of different lengths");
    if (n < 2) throw DataError("bootstrap: needs at least 2 paired errors");

    std::vector<double> out(config.replicates);
    const std::size_t cap = 10 * config.replicates;
    std::vector<std::size_t> redraws(config.replicates, 0);
    parallel_for(config.replicates, config.threads, [&](std::size_t r) {
        Rng rng(substream_seed(config.seed, r));
        while (true) {
            const auto idx = stationary_indices(n, config.mean_block_length, rng);
            double ss1 = 0.0, ss2 = 0.0;
            for (const std::size_t i : idx) {
                ss1 += errors1[i] * errors1[i];
                ss2 += errors2[i] * errors2[i];
            }
            if (ss1 > 0.0 && ss2 > 0.0) {
                out[r] = std::log(ss2 / ss1);
                return;
            }
            if (++redraws[r] > cap) break;
        }
    });
    std::size_t total = 0;
    for (const std::size_t d : redraws) total += d;
    if (total > cap) throw DomainError("bootstrap: too many degenerate (zero-MSE) replicates");
    if (discarded) *discarded = total;
    return out;
}

EfficiencyEstimate stationary_bootstrap_ci(std::span<const double> errors1, std::span<const double> errors2,
                                           const BootstrapConfig& config) {
    EfficiencyEstimate est;
    est.point = relative_efficiency(errors1, errors2);
    if (!(est.point > 0.0)) throw DomainError("bootstrap: method 2 has zero MSE, efficiency is 0");
    std::vector<double> logs = bootstrap_log_ratios(errors1, errors2, config, &est.discarded);
    std::sort(logs.begin(), logs.end());

    const double alpha = 1.0 - config.level;
    const double q_lo = quantile_sorted(logs, alpha / 2.0);
    const double q_hi = quantile_sorted(logs, 1.0 - alpha / 2.0);
    const double log_point = std::log(est.point);
    // exp(2 log e - q) written as e * exp(log e - q).
    est.ci_low = est.point * std::exp(log_point - q_hi);
    est.ci_high = est.point * std::exp(log_point - q_lo);
    est.replicates = config.replicates;
    est.mean_block_length = config.mean_block_length;
    est.level = config.level;
    est.seed = config.seed;
    return est;
}

}  // namespace argo::eval
