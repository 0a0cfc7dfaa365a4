#include "argo/io/synthetic.hpp"

#include "argo/errors.hpp"
#include "argo/io/csv.hpp"
#include "argo/io/readers.hpp"
#include "argo/rng.hpp"
#include "argo/transforms/transforms.hpp"

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace argo::io {

using nlohmann::json;

models::HmmParams SyntheticSpec::hmm() const {
    models::HmmParams h;
    h.mu_y = mu_y;
    h.alpha = alpha;
    h.sigma2 = sigma2;
    h.mu_x = mu_x;
    h.beta = beta;
    h.q = q;
    return h;
}

void SyntheticSpec::validate() const {
    if (weeks < 1) throw ConfigError("synthetic spec: weeks must be positive");
    if (!(sigma2 > 0.0)) throw ConfigError("synthetic spec: sigma2 must be positive");
    if (!(delta > 0.0)) throw ConfigError("synthetic spec: delta must be positive");
    const auto k = beta.size();
    if (mu_x.size() != k || q.rows() != k || q.cols() != k)
        throw ConfigError("synthetic spec: mu_x, beta and Q must all have K = " + std::to_string(k) + " entries");
    if (!alpha.allFinite() || !beta.allFinite() || !mu_x.allFinite() || !q.allFinite() || !std::isfinite(mu_y))
        throw ConfigError("synthetic spec: non-finite parameter");
    if (k > 0) {
        if (!q.isApprox(q.transpose(), 1e-12)) throw ConfigError("synthetic spec: Q is not symmetric");
        Eigen::LLT<Eigen::MatrixXd> llt(q);
        if (llt.info() != Eigen::Success) throw ConfigError("synthetic spec: Q is not positive definite");
    }
    if (std::chrono::weekday{first_week_end} != std::chrono::Saturday)
        throw ConfigError("synthetic spec: first week must end on a Saturday");

    const auto n = alpha.size();
    if (n == 0) return;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    companion.row(0) = alpha.transpose();
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    const Eigen::VectorXcd eig = companion.eigenvalues();
    const double radius = eig.cwiseAbs().maxCoeff();
    if (!(radius < 1.0))
        throw ConfigError("synthetic spec: autoregression is not stationary (spectral radius " +
                          std::to_string(radius) + ")");
}

std::vector<std::string> synthetic_term_names(std::size_t k) {
    const std::size_t width = std::to_string(std::max<std::size_t>(k, 1)).size();
    std::vector<std::string> names(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::string num = std::to_string(j + 1);
        names[j] = "term_" + std::string(width - num.size(), '0') + num;
    }
    return names;
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const std::size_t n_lags = spec.lags();
    const std::size_t k = spec.terms();
    const std::size_t total = spec.burn_in + spec.weeks;
    const double sigma = std::sqrt(spec.sigma2);

    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n_lags; ++i)
        if (spec.alpha[static_cast<Eigen::Index>(i)] != 0.0) active.push_back(i);
    const double stationary_mean = spec.mu_y / (1.0 - spec.alpha.sum());

    // Slots [0, n_lags) hold the pre-sample values.
    std::vector<double> y(n_lags + total, stationary_mean);
    for (std::size_t t = n_lags; t < y.size(); ++t) {
        double v = spec.mu_y;
        for (const std::size_t i : active) v += spec.alpha[static_cast<Eigen::Index>(i)] * y[t - 1 - i];
        y[t] = v + sigma * rng.normal();
    }
    std::vector<double> kept(y.end() - static_cast<std::ptrdiff_t>(spec.weeks), y.end());

    Eigen::MatrixXd x(static_cast<Eigen::Index>(spec.weeks), static_cast<Eigen::Index>(k));
    if (k > 0) {
        const Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(spec.q).matrixL();
        Eigen::VectorXd z(static_cast<Eigen::Index>(k));
        for (std::size_t t = 0; t < spec.weeks; ++t) {
            for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = rng.normal();
            x.row(static_cast<Eigen::Index>(t)) = (spec.mu_x + kept[t] * spec.beta + chol * z).transpose();
        }
    }

    Eigen::MatrixXd freq = x;
    std::size_t clamped = 0;
    for (Eigen::Index i = 0; i < freq.rows(); ++i) {
        for (Eigen::Index j = 0; j < freq.cols(); ++j) {
            const double raw = std::exp(x(i, j)) - spec.delta;
            const double c = std::clamp(raw, 0.0, 100.0);
            if (c != raw) ++clamped;
            freq(i, j) = c;
        }
    }

    std::vector<double> percent(spec.weeks);
    for (std::size_t t = 0; t < spec.weeks; ++t) percent[t] = 100.0 * transforms::inverse_logit(kept[t]);

    const data::EpiWeek start = data::week_ending(spec.first_week_end);
    SyntheticData out{
        data::VintageSeries({}, data::WeeklySeries(start, std::move(percent), data::SeriesUnit::percent)),
        data::SearchPanel(start, synthetic_term_names(k), std::move(freq), data::SearchSource::scaled),
        SyntheticTruth{spec.hmm(), spec.seed, data::WeeklySeries(start, std::move(kept), data::SeriesUnit::logit),
                       std::move(x), clamped}};
    return out;
}

namespace {

Eigen::VectorXd read_vector(const json& j, const char* name, std::size_t length, bool scalar_ok) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(length));
    if (!j.contains(name)) return v;
    const json& x = j.at(name);
    if (x.is_number()) {
        if (!scalar_ok) throw ConfigError(std::string("synthetic spec: '") + name + "' must be an array or object");
        v.setConstant(x.get<double>());
    } else if (x.is_array()) {
        if (x.size() != length)
            throw ConfigError(std::string("synthetic spec: '") + name + "' must have " + std::to_string(length) +
                              " entries");
        for (std::size_t i = 0; i < length; ++i) v[static_cast<Eigen::Index>(i)] = x[i].get<double>();
    } else if (x.is_object()) {
        for (const auto& [key, value] : x.items()) {
            std::size_t idx = 0;
            try {
                idx = std::stoul(key);
            } catch (const std::exception&) {
                throw ConfigError(std::string("synthetic spec: bad index '") + key + "' in '" + name + "'");
            }
            if (idx < 1 || idx > length)
                throw ConfigError(std::string("synthetic spec: index ") + key + " out of range in '" + name + "'");
            v[static_cast<Eigen::Index>(idx - 1)] = value.get<double>();
        }
    } else {
        throw ConfigError(std::string("synthetic spec: '") + name + "' has an unsupported type");
    }
    return v;
}

json sparse(const Eigen::VectorXd& v) {
    json out = json::object();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v[i] != 0.0) out[std::to_string(i + 1)] = v[i];
    return out;
}

}  // namespace

SyntheticSpec parse_synthetic_spec(const std::string& json_text) {
    SyntheticSpec s;
    try {
        const json j = json::parse(json_text);
        if (!j.contains("seed")) throw ConfigError("synthetic spec: 'seed' is required");
        s.seed = j.at("seed").get<std::uint64_t>();
        s.weeks = j.value("weeks", s.weeks);
        s.burn_in = j.value("burn_in", s.burn_in);
        s.mu_y = j.value("mu_y", s.mu_y);
        s.sigma2 = j.value("sigma2", s.sigma2);
        s.delta = j.value("delta", s.delta);
        if (j.contains("first_week_end")) s.first_week_end = data::parse_date(j.at("first_week_end").get<std::string>());
        std::size_t lags = j.value("lags", std::size_t{0});
        if (j.contains("alpha") && j.at("alpha").is_array() && !j.contains("lags")) lags = j.at("alpha").size();
        std::size_t terms = j.value("terms", std::size_t{0});
        if (j.contains("beta") && j.at("beta").is_array() && !j.contains("terms")) terms = j.at("beta").size();
        s.alpha = read_vector(j, "alpha", lags, false);
        s.beta = read_vector(j, "beta", terms, false);
        s.mu_x = read_vector(j, "mu_x", terms, true);
        const auto k = static_cast<Eigen::Index>(terms);
        s.q = Eigen::MatrixXd::Identity(k, k);
        if (j.contains("q")) {
            const json& q = j.at("q");
            if (q.is_number()) {
                s.q *= q.get<double>();
            } else if (q.is_array() && (q.empty() || q.front().is_number())) {
                s.q = read_vector(j, "q", terms, false).asDiagonal();
            } else if (q.is_array()) {
                if (q.size() != terms) throw ConfigError("synthetic spec: 'q' must have K rows");
                for (Eigen::Index r = 0; r < k; ++r) {
                    if (q[r].size() != terms) throw ConfigError("synthetic spec: 'q' must be K x K");
                    for (Eigen::Index c = 0; c < k; ++c) s.q(r, c) = q[r][c].get<double>();
                }
            } else {
                throw ConfigError("synthetic spec: 'q' has an unsupported type");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("synthetic spec: ") + e.what());
    } catch (const DataError& e) {
        throw ConfigError(std::string("synthetic spec: ") + e.what());
    }
    s.validate();
    return s;
}

SyntheticSpec read_synthetic_spec(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw ConfigError("synthetic spec not found: " + path.string());
    return parse_synthetic_spec(read_text(path));
}

std::string truth_json(const SyntheticData& data) {
    const auto& t = data.truth;
    json j;
    j["seed"] = t.seed;
    j["weeks"] = t.y_logit.size();
    j["first_week"] = data::format_date(t.y_logit.start().end_date);
    j["mu_y"] = t.params.mu_y;
    j["sigma2"] = t.params.sigma2;
    j["lags"] = t.params.alpha.size();
    j["terms"] = t.params.beta.size();
    j["alpha"] = sparse(t.params.alpha);
    j["beta"] = sparse(t.params.beta);
    j["mu_x"] = std::vector<double>(t.params.mu_x.data(), t.params.mu_x.data() + t.params.mu_x.size());
    json q = json::array();
    for (Eigen::Index r = 0; r < t.params.q.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < t.params.q.cols(); ++c) row.push_back(t.params.q(r, c));
        q.push_back(row);
    }
    j["q"] = q;
    j["clamped_cells"] = t.clamped_cells;
    j["y_logit"] = std::vector<double>(t.y_logit.values().begin(), t.y_logit.values().end());
    return j.dump(2) + "\n";
}

void write_synthetic(const std::filesystem::path& dir, const SyntheticData& data) {
    std::filesystem::create_directories(dir);
    write_ili_csv(dir / "ili.csv", data.ili.finalized());
    write_vintage_csv(dir / "revisions.csv", data.ili);
    write_panel_csv(dir / "panel.csv", data.panel);
    write_text(dir / "truth.json", truth_json(data));
}

}  // namespace argo::io
