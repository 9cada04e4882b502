#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "tcoint/rng.hpp"
#include "tcoint/tscore.hpp"

namespace tcoint {

/// Two-regime threshold VECM data-generating process. A1 and A2 use the
/// regressor layout of build_regressors: (2 + 2q) x 2, one column per equation.
struct DgpSpec {
    double beta = 1.0;
    double tau = 0.0;
    Eigen::MatrixXd A1;
    Eigen::MatrixXd A2;
    Eigen::Matrix2d noiseCov = Eigen::Matrix2d::Identity();
    int T = 248;
    int burnIn = 200;
    std::uint64_t seed = 1;
    std::string start = "1985-01";
    std::string benchmarkLabel = "benchmark";
    std::string targetLabel = "target";

    [[nodiscard]] int lag_order() const { return static_cast<int>(A1.rows() - 2) / 2; }
    void validate() const;
};

/// Runs the error-correction recursion forward from `initial` levels
/// (m x 2, m >= 1) with the given innovations (steps x 2). Lagged differences
/// that reach before the start are taken as zero. Returns (m + steps) x 2 levels.
Eigen::MatrixXd propagate_tvecm(const Eigen::MatrixXd& initial, const Eigen::MatrixXd& A1,
                                const Eigen::MatrixXd& A2, double beta, double tau,
                                const Eigen::MatrixXd& innovations);
Eigen::MatrixXd propagate_vecm(const Eigen::MatrixXd& initial, const Eigen::MatrixXd& A, double beta,
                               const Eigen::MatrixXd& innovations);

/// rows x 2 draws from N(0, cov); throws NumericalError if cov is not
/// symmetric positive definite.
Eigen::MatrixXd gaussian_innovations(const Eigen::Matrix2d& cov, int rows, Engine& rng);

/// Simulates from X_0 = (0, 0), discards the first burnIn observations and
/// returns exactly T, with monthly keys from `start`.
Panel simulate_tvecm(const DgpSpec& spec);

/// One-regime counterpart using the same innovation stream as
/// simulate_tvecm for the given seed.
Panel simulate_linear_vecm(const Eigen::MatrixXd& A, const Eigen::Matrix2d& noiseCov, double beta, int T,
                           int burnIn, std::uint64_t seed, const std::string& start = "1985-01",
                           const std::string& benchmarkLabel = "benchmark",
                           const std::string& targetLabel = "target");

}  // namespace tcoint
