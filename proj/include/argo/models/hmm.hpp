#pragma once

#include <Eigen/Dense>

namespace argo::models {

/**
 * Parameters of the generative model behind the regression:
 *   y_t = mu_y + alpha . (y_{t-1}, ..., y_{t-N}) + eps_t,   eps_t ~ N(0, sigma2)
 *   X_t | y_t ~ N_K(mu_x + y_t beta, Q)
 * with X_t conditionally independent of everything else given y_t.
 */
struct HmmParams {
    double mu_y = 0.0;
    Eigen::VectorXd alpha;
    double sigma2 = 1.0;
    Eigen::VectorXd mu_x;
    Eigen::VectorXd beta;
    Eigen::MatrixXd q;

    /// Shapes, sigma2 > 0, Q symmetric; throws ConfigError. Definiteness is checked by the Cholesky factorization.
    void validate() const;
};

struct Predictive {
    double mean = 0.0;
    double variance = 0.0;
};

/**
 * Distribution of y_t given the N previous values and X_t. It is normal with
 *   variance = (1/sigma2 + beta' Q^-1 beta)^-1
 *   mean     = variance * ((mu_y + alpha . y_lags) / sigma2 + beta' Q^-1 (X_t - mu_x))
 * Q enters only through Cholesky solves.
 *
 * @throws DomainError if Q is not positive definite; DataError on dimension mismatch.
 */
[[nodiscard]] Predictive predictive_distribution(const HmmParams& h, const Eigen::VectorXd& y_lags,
                                                 const Eigen::VectorXd& x_t);

}  // namespace argo::models
