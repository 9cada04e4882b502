#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tcoint {

/// Multi-response least squares Y = X B + E solved by column-pivoted QR.
struct OlsFit {
    Eigen::MatrixXd coef;       ///< k x m
    Eigen::MatrixXd residuals;  ///< n x m
    Eigen::MatrixXd xtxInv;     ///< (X'X)^{-1}, k x k
};

/// nullopt when X has fewer rows than columns or is rank deficient.
std::optional<OlsFit> try_least_squares(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y);

/// Throws NumericalError naming the collinear columns when X is rank deficient.
OlsFit least_squares(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                     const std::vector<std::string>& columnNames = {});

/// Eicker-White (HC0) covariance of one equation's coefficients:
/// (X'X)^{-1} X' diag(e^2) X (X'X)^{-1}.
Eigen::MatrixXd hc0_covariance(const Eigen::MatrixXd& X, const Eigen::MatrixXd& xtxInv,
                               const Eigen::VectorXd& e);

/// HC0 covariance of vec(B) for a multi-equation fit, equation-major:
/// (I (x) Q) [sum_t (e_t e_t') (x) (x_t x_t')] (I (x) Q), Q = (X'X)^{-1}.
Eigen::MatrixXd hc0_covariance_vec(const Eigen::MatrixXd& X, const Eigen::MatrixXd& xtxInv,
                                   const Eigen::MatrixXd& E);

/// Concentrated Gaussian log-likelihood of an n-observation, p-equation
/// system: -(n/2) (p ln 2pi + ln det Sigma + p). -inf if det Sigma <= 0.
double concentrated_loglik(const Eigen::MatrixXd& sigma, int n);

}  // namespace tcoint
