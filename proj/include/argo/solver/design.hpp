#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace argo::solver {

/// Penalty group of a design column: autoregressive lags or exogenous search terms.
enum class Group { lag, exo };

/// Regression problem: n observations of p predictors plus a response.
struct DesignMatrix {
    Eigen::MatrixXd x;  ///< n x p
    Eigen::VectorXd y;  ///< n
    std::vector<Group> group_of;  ///< p entries

    [[nodiscard]] std::size_t rows() const { return static_cast<std::size_t>(x.rows()); }
    [[nodiscard]] std::size_t cols() const { return static_cast<std::size_t>(x.cols()); }

    /// Shape and finiteness checks; throws DataError.
    void validate() const;

    /// Rows selected by index, in the given order.
    [[nodiscard]] DesignMatrix subset(std::span<const std::size_t> row_index) const;
};

/// The five hyperparameter restrictions considered for the penalized objective.
enum class Regime {
    same_l1,           ///< eta = 0, lambda_lag = lambda_exo (the proposed model)
    separate_l1,       ///< eta = 0
    same_l2,           ///< lambda = 0, eta_lag = eta_exo
    separate_l2,       ///< lambda = 0
    same_elastic_net,  ///< lambda_lag = lambda_exo, eta_lag = eta_exo
};

[[nodiscard]] std::string to_string(Regime r);
/// Accepts the CLI spellings same-l1, sep-l1, same-l2, sep-l2, enet.
[[nodiscard]] Regime parse_regime(const std::string& s);

/**
 * Resolved penalty of the mean-scale objective
 *
 *   (1 / 2n) * ||y - mu - X b||^2
 *     + lambda_lag * |b_lag|_1 + eta_lag * |b_lag|_2^2
 *     + lambda_exo * |b_exo|_1 + eta_exo * |b_exo|_2^2
 *
 * which is the summed-squares objective with every hyperparameter divided by 2n.
 */
struct PenaltySpec {
    Regime regime = Regime::same_l1;
    double lambda_lag = 0.0;
    double lambda_exo = 0.0;
    double eta_lag = 0.0;
    double eta_exo = 0.0;

    static PenaltySpec same_l1(double lambda);
    static PenaltySpec separate_l1(double lambda_lag, double lambda_exo);
    static PenaltySpec same_l2(double eta);
    static PenaltySpec separate_l2(double eta_lag, double eta_exo);
    static PenaltySpec elastic_net(double lambda, double eta);

    [[nodiscard]] double lambda(Group g) const { return g == Group::lag ? lambda_lag : lambda_exo; }
    [[nodiscard]] double eta(Group g) const { return g == Group::lag ? eta_lag : eta_exo; }

    /// Non-negativity, finiteness and the regime's equality constraints; throws ConfigError.
    void validate() const;

    friend bool operator==(const PenaltySpec&, const PenaltySpec&) = default;
};

}  // namespace argo::solver
