#include "argo/models/hmm.hpp"

#include "argo/errors.hpp"

#include <algorithm>
#include <cmath>

namespace argo::models {

void HmmParams::validate() const {
    const auto k = beta.size();
    if (mu_x.size() != k || q.rows() != k || q.cols() != k)
        throw ConfigError("HMM parameters: mu_x, beta and Q must share dimension K");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw ConfigError("HMM parameters: sigma2 must be positive");
    if (k > 0 && (q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, q.cwiseAbs().maxCoeff()))
        throw ConfigError("HMM parameters: Q must be symmetric");
}

Predictive predictive_distribution(const HmmParams& h, const Eigen::VectorXd& y_lags, const Eigen::VectorXd& x_t) {
    h.validate();
    if (y_lags.size() != h.alpha.size()) throw DataError("predictive_distribution: lag vector length mismatch");
    if (x_t.size() != h.beta.size()) throw DataError("predictive_distribution: X_t length mismatch");

    const Eigen::LLT<Eigen::MatrixXd> chol(h.q);
    if (chol.info() != Eigen::Success) throw DomainError("Q is not positive definite");

    const Eigen::VectorXd q_inv_beta = chol.solve(h.beta);
    const double precision = 1.0 / h.sigma2 + h.beta.dot(q_inv_beta);
    const double variance = 1.0 / precision;
    const double prior_mean = h.mu_y + h.alpha.dot(y_lags);
    const double mean = variance * (prior_mean / h.sigma2 + q_inv_beta.dot(x_t - h.mu_x));
    return {mean, variance};
}

}  // namespace argo::models
