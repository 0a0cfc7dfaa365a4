#include "support/fixtures.hpp"

#include "argo/io/csv.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>

namespace argo::fixture {

data::EpiWeek week(const std::string& date) { return data::week_ending(data::parse_date(date)); }

solver::DesignMatrix random_design(Rng& rng, int n, int p, int lags) {
    solver::DesignMatrix d;
    d.x.resize(n, p);
    d.group_of.assign(static_cast<std::size_t>(p), solver::Group::exo);
    std::vector<double> s(static_cast<std::size_t>(n + lags + 1));
    s[0] = rng.normal();
    for (std::size_t i = 1; i < s.size(); ++i) s[i] = 0.8 * s[i - 1] + 0.6 * rng.normal();
    for (int j = 0; j < lags; ++j) {
        d.group_of[static_cast<std::size_t>(j)] = solver::Group::lag;
        for (int i = 0; i < n; ++i) d.x(i, j) = -2.0 + 0.7 * s[static_cast<std::size_t>(i + lags - j)];
    }
    Eigen::VectorXd factor(n);
    for (int i = 0; i < n; ++i) factor(i) = rng.normal();
    for (int j = lags; j < p; ++j) {
        const double scale = 0.2 + 3.0 * rng.uniform();
        const double offset = 10.0 * (rng.uniform() - 0.5);
        const double load = rng.uniform() < 0.3 ? 0.8 : 0.0;
        for (int i = 0; i < n; ++i) d.x(i, j) = offset + scale * (load * factor(i) + rng.normal());
    }
    d.y.resize(n);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    const int informative = std::min(p, 5);
    for (int k = 0; k < informative; ++k)
        beta(static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(p)))) = rng.normal();
    for (int i = 0; i < n; ++i) d.y(i) = 0.3 + d.x.row(i).dot(beta) * 0.5 + 0.5 * rng.normal();
    return d;
}

models::HmmParams random_hmm(Rng& rng, int lags, int terms) {
    models::HmmParams h;
    h.mu_y = rng.normal();
    h.alpha.resize(lags);
    for (int i = 0; i < lags; ++i) h.alpha(i) = 0.4 * rng.normal();
    h.sigma2 = 0.1 + 2.0 * rng.uniform();
    h.mu_x.resize(terms);
    h.beta.resize(terms);
    Eigen::MatrixXd a(terms, terms);
    for (int i = 0; i < terms; ++i) {
        h.mu_x(i) = 3.0 * rng.normal();
        h.beta(i) = 2.0 * rng.normal();
        for (int j = 0; j < terms; ++j) a(i, j) = rng.normal();
    }
    h.q = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(terms, terms);
    h.q = 0.5 * (h.q + h.q.transpose());
    return h;
}

io::SyntheticSpec sparse_truth_spec(std::uint64_t seed, std::size_t weeks, std::size_t terms) {
    Rng rng(substream_seed(seed, 0x5eedULL));
    io::SyntheticSpec s;
    s.weeks = weeks;
    s.seed = seed;
    s.mu_y = -0.35;
    s.sigma2 = 0.05;
    s.alpha = Eigen::VectorXd::Zero(52);
    s.alpha(0) = 0.55;
    s.alpha(1) = 0.2;
    s.alpha(51) = 0.15;
    const auto k = static_cast<Eigen::Index>(terms);
    s.beta = Eigen::VectorXd::Zero(k);
    std::vector<std::size_t> order(terms);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = terms; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
    for (std::size_t i = 0; i < std::min<std::size_t>(10, terms); ++i) {
        const double magnitude = 0.3 + 0.5 * rng.uniform();
        s.beta(static_cast<Eigen::Index>(order[i])) = rng.uniform() < 0.5 ? -magnitude : magnitude;
    }
    // Mean logit is mu_y / (1 - 0.9) = -3.5.
    s.mu_x = (2.0 + 3.5 * s.beta.array()).matrix();
    s.q = 0.05 * Eigen::MatrixXd::Identity(k, k);
    s.first_week_end = data::parse_date("2004-01-03");
    return s;
}

io::SyntheticSpec small_spec(std::uint64_t seed, std::size_t weeks, std::size_t terms) {
    io::SyntheticSpec s;
    s.weeks = weeks;
    s.seed = seed;
    s.mu_y = -0.6;
    s.sigma2 = 0.04;
    s.alpha = Eigen::VectorXd::Zero(3);
    s.alpha << 0.6, 0.15, 0.05;
    const auto k = static_cast<Eigen::Index>(terms);
    s.beta = Eigen::VectorXd::Zero(k);
    for (Eigen::Index j = 0; j < std::min<Eigen::Index>(3, k); ++j) s.beta(j) = j % 2 == 0 ? 0.5 : -0.4;
    s.mu_x = (2.0 + 3.0 * s.beta.array()).matrix();
    s.q = 0.05 * Eigen::MatrixXd::Identity(k, k);
    s.first_week_end = data::parse_date("2009-01-03");
    return s;
}

models::ModelSpec small_model() {
    models::ModelSpec m;
    m.lags = 4;
    m.window = 30;
    m.cv.points_1d = 12;
    m.cv.points_2d = 5;
    return m;
}

TempDir::TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("argo_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

bool directories_identical(const std::filesystem::path& a, const std::filesystem::path& b, std::string* why) {
    auto listing = [](const std::filesystem::path& root) {
        std::map<std::string, std::string> files;
        for (const auto& e : std::filesystem::recursive_directory_iterator(root))
            if (e.is_regular_file())
                files[std::filesystem::relative(e.path(), root).string()] = io::read_text(e.path());
        return files;
    };
    const auto fa = listing(a);
    const auto fb = listing(b);
    if (fa.size() != fb.size()) {
        if (why) *why = "different file counts";
        return false;
    }
    for (const auto& [name, bytes] : fa) {
        const auto it = fb.find(name);
        if (it == fb.end() || it->second != bytes) {
            if (why) *why = "file differs: " + name;
            return false;
        }
    }
    return !fa.empty();
}

}  // namespace argo::fixture
