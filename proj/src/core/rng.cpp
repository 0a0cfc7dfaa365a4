#include "argo/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace argo {

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: empty range");
    // Reject the top partial bucket so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return draw % n;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

std::uint64_t Rng::geometric(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("geometric: p must lie in (0, 1]");
    if (p == 1.0) return 1;
    // Inversion: P(L > k) = (1 - p)^k.
    const double u = uniform_open0();
    const double k = std::floor(std::log(u) / std::log1p(-p));
    return 1 + static_cast<std::uint64_t>(k);
}

}  // namespace argo
