#pragma once

#include "argo/data/epiweek.hpp"
#include "argo/io/synthetic.hpp"
#include "argo/models/argo_model.hpp"
#include "argo/models/hmm.hpp"
#include "argo/rng.hpp"
#include "argo/solver/design.hpp"

#include <filesystem>
#include <string>

namespace argo::fixture {

/// Week ending on the Saturday `date`.
data::EpiWeek week(const std::string& date);

/// Regression problem with `lags` autocorrelated lag-like columns followed by exogenous
/// columns of mixed scales and offsets; the response depends sparsely on both groups.
solver::DesignMatrix random_design(Rng& rng, int n, int p, int lags);

/// Random HmmParams with N lags and K terms; Q = A A' + I/2.
models::HmmParams random_hmm(Rng& rng, int lags, int terms);

/**
 * Sparse planted truth: lags 1, 2 and 52 of an AR(52) logit series, 10 of K
 * search terms informative, X ~ N(mu_x + y beta, 0.05 I) with mu_x chosen so that
 * frequencies stay well inside (0, 100).
 */
io::SyntheticSpec sparse_truth_spec(std::uint64_t seed, std::size_t weeks = 400, std::size_t terms = 100);

/// Small version for fast tests: 3 planted lags, `terms` terms of which 3 informative.
io::SyntheticSpec small_spec(std::uint64_t seed, std::size_t weeks, std::size_t terms);

/// Model spec sized for small synthetic data sets.
models::ModelSpec small_model();

/// Fresh directory under the system temp path, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

/// Same relative file names with identical bytes.
bool directories_identical(const std::filesystem::path& a, const std::filesystem::path& b, std::string* why = nullptr);

}  // namespace argo::fixture
