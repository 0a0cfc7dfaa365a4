#include "argo/solver/design.hpp"

#include "argo/errors.hpp"

#include <cmath>

namespace argo::solver {

void DesignMatrix::validate() const {
    if (x.rows() != y.size())
        throw DataError("design has " + std::to_string(x.rows()) + " rows but response has " +
                        std::to_string(y.size()));
    if (group_of.size() != cols())
        throw DataError("group assignment covers " + std::to_string(group_of.size()) + " of " +
                        std::to_string(cols()) + " columns");
    if (!x.allFinite() || !y.allFinite()) throw DataError("design or response contains non-finite values");
}

DesignMatrix DesignMatrix::subset(std::span<const std::size_t> row_index) const {
    DesignMatrix out;
    out.x.resize(static_cast<Eigen::Index>(row_index.size()), x.cols());
    out.y.resize(static_cast<Eigen::Index>(row_index.size()));
    for (std::size_t r = 0; r < row_index.size(); ++r) {
        const auto src = static_cast<Eigen::Index>(row_index[r]);
        out.x.row(static_cast<Eigen::Index>(r)) = x.row(src);
        out.y(static_cast<Eigen::Index>(r)) = y(src);
    }
    out.group_of = group_of;
    return out;
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::same_l1: return "same-l1";
        case Regime::separate_l1: return "sep-l1";
        case Regime::same_l2: return "same-l2";
        case Regime::separate_l2: return "sep-l2";
        case Regime::same_elastic_net: return "enet";
    }
    return "unknown";
}

Regime parse_regime(const std::string& s) {
    if (s == "same-l1") return Regime::same_l1;
    if (s == "sep-l1") return Regime::separate_l1;
    if (s == "same-l2") return Regime::same_l2;
    if (s == "sep-l2") return Regime::separate_l2;
    if (s == "enet") return Regime::same_elastic_net;
    throw ConfigError("unknown regime '" + s + "' (expected same-l1, sep-l1, same-l2, sep-l2 or enet)");
}

PenaltySpec PenaltySpec::same_l1(double lambda) { return {Regime::same_l1, lambda, lambda, 0.0, 0.0}; }

PenaltySpec PenaltySpec::separate_l1(double lambda_lag, double lambda_exo) {
    return {Regime::separate_l1, lambda_lag, lambda_exo, 0.0, 0.0};
}

PenaltySpec PenaltySpec::same_l2(double eta) { return {Regime::same_l2, 0.0, 0.0, eta, eta}; }

PenaltySpec PenaltySpec::separate_l2(double eta_lag, double eta_exo) {
    return {Regime::separate_l2, 0.0, 0.0, eta_lag, eta_exo};
}

PenaltySpec PenaltySpec::elastic_net(double lambda, double eta) {
    return {Regime::same_elastic_net, lambda, lambda, eta, eta};
}

void PenaltySpec::validate() const {
    for (double v : {lambda_lag, lambda_exo, eta_lag, eta_exo})
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("penalty hyperparameters must be finite and >= 0");
    const bool same_lambda = lambda_lag == lambda_exo;
    const bool same_eta = eta_lag == eta_exo;
    const bool no_l1 = lambda_lag == 0.0 && lambda_exo == 0.0;
    const bool no_l2 = eta_lag == 0.0 && eta_exo == 0.0;
    bool ok = true;
    switch (regime) {
        case Regime::same_l1: ok = no_l2 && same_lambda; break;
        case Regime::separate_l1: ok = no_l2; break;
        case Regime::same_l2: ok = no_l1 && same_eta; break;
        case Regime::separate_l2: ok = no_l1; break;
        case Regime::same_elastic_net: ok = same_lambda && same_eta; break;
    }
    if (!ok) throw ConfigError("penalty values violate the constraints of regime " + to_string(regime));
}

}  // namespace argo::solver
