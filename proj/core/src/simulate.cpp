#include "tcoint/simulate.hpp"

#include <cmath>

#include "tcoint/errors.hpp"

namespace tcoint {

namespace {

void check_coefficients(const Eigen::MatrixXd& A, const char* name) {
    if (A.cols() != 2 || A.rows() < 2 || A.rows() % 2 != 0) {
        throw_invalid(std::string(name) + " must be (2 + 2q) x 2");
    }
    if (!A.allFinite()) throw_invalid(std::string(name) + " has non-finite entries");
}

Eigen::LLT<Eigen::Matrix2d> checked_cholesky(const Eigen::Matrix2d& cov) {
    if (!cov.allFinite() || std::abs(cov(0, 1) - cov(1, 0)) > 1e-12 * (1.0 + cov.cwiseAbs().maxCoeff())) {
        throw NumericalError("innovation covariance must be symmetric");
    }
    Eigen::LLT<Eigen::Matrix2d> llt(cov);
    if (llt.info() != Eigen::Success || !(cov(0, 0) > 0.0) ||
        !(cov(0, 0) * cov(1, 1) - cov(0, 1) * cov(1, 0) > 0.0)) {
        throw NumericalError("innovation covariance is not positive definite");
    }
    return llt;
}

template <class Select>
Eigen::MatrixXd propagate(const Eigen::MatrixXd& initial, int q, double beta,
                          const Eigen::MatrixXd& innovations, Select&& select) {
    if (initial.cols() != 2 || initial.rows() < 1) throw_invalid("initial levels must be m x 2, m >= 1");
    if (innovations.cols() != 2) throw_invalid("innovations must have 2 columns");
    const Eigen::Index m = initial.rows();
    const Eigen::Index n = m + innovations.rows();
    Eigen::MatrixXd X(n, 2);
    X.topRows(m) = initial;
    Eigen::VectorXd x(2 + 2 * q);
    for (Eigen::Index t = m; t < n; ++t) {
        const double z = X(t - 1, 0) - beta * X(t - 1, 1);
        x(0) = 1.0;
        x(1) = z;
        for (int l = 1; l <= q; ++l) {
            const Eigen::Index a = t - l, b = t - l - 1;
            for (int j = 0; j < 2; ++j) x(2 * l + j) = b >= 0 ? X(a, j) - X(b, j) : 0.0;
        }
        const Eigen::MatrixXd& A = select(z);
        for (int j = 0; j < 2; ++j) X(t, j) = X(t - 1, j) + A.col(j).dot(x) + innovations(t - m, j);
    }
    return X;
}

}  // namespace

void DgpSpec::validate() const {
    check_coefficients(A1, "A1");
    check_coefficients(A2, "A2");
    if (A1.rows() != A2.rows()) throw_invalid("A1 and A2 must have the same lag order");
    if (T < 20) throw_invalid("simulation length T must be >= 20");
    if (burnIn < 0) throw_invalid("burnIn must be >= 0");
    if (!std::isfinite(beta) || !std::isfinite(tau)) throw_invalid("beta and tau must be finite");
    checked_cholesky(noiseCov);
}

Eigen::MatrixXd propagate_tvecm(const Eigen::MatrixXd& initial, const Eigen::MatrixXd& A1,
                                const Eigen::MatrixXd& A2, double beta, double tau,
                                const Eigen::MatrixXd& innovations) {
    check_coefficients(A1, "A1");
    check_coefficients(A2, "A2");
    const int q = static_cast<int>(A1.rows() - 2) / 2;
    return propagate(initial, q, beta, innovations,
                     [&](double z) -> const Eigen::MatrixXd& { return z <= tau ? A1 : A2; });
}

Eigen::MatrixXd propagate_vecm(const Eigen::MatrixXd& initial, const Eigen::MatrixXd& A, double beta,
                               const Eigen::MatrixXd& innovations) {
    check_coefficients(A, "A");
    const int q = static_cast<int>(A.rows() - 2) / 2;
    return propagate(initial, q, beta, innovations, [&](double) -> const Eigen::MatrixXd& { return A; });
}

Eigen::MatrixXd gaussian_innovations(const Eigen::Matrix2d& cov, int rows, Engine& rng) {
    const Eigen::Matrix2d L = checked_cholesky(cov).matrixL();
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd e(rows, 2);
    for (int i = 0; i < rows; ++i) {
        const double u0 = normal(rng);
        const double u1 = normal(rng);
        e(i, 0) = L(0, 0) * u0;
        e(i, 1) = L(1, 0) * u0 + L(1, 1) * u1;
    }
    return e;
}

Panel simulate_tvecm(const DgpSpec& spec) {
    spec.validate();
    Engine rng = make_engine(spec.seed, 0);
    const Eigen::MatrixXd e = gaussian_innovations(spec.noiseCov, spec.burnIn + spec.T - 1, rng);
    const Eigen::MatrixXd X =
        propagate_tvecm(Eigen::MatrixXd::Zero(1, 2), spec.A1, spec.A2, spec.beta, spec.tau, e);
    return panel_from_levels(X.bottomRows(spec.T), spec.start, spec.benchmarkLabel, spec.targetLabel);
}

Panel simulate_linear_vecm(const Eigen::MatrixXd& A, const Eigen::Matrix2d& noiseCov, double beta, int T,
                           int burnIn, std::uint64_t seed, const std::string& start,
                           const std::string& benchmarkLabel, const std::string& targetLabel) {
    DgpSpec spec;
    spec.A1 = A;
    spec.A2 = A;
    spec.noiseCov = noiseCov;
    spec.beta = beta;
    spec.T = T;
    spec.burnIn = burnIn;
    spec.validate();
    Engine rng = make_engine(seed, 0);
    const Eigen::MatrixXd e = gaussian_innovations(noiseCov, burnIn + T - 1, rng);
    const Eigen::MatrixXd X = propagate_vecm(Eigen::MatrixXd::Zero(1, 2), A, beta, e);
    return panel_from_levels(X.bottomRows(T), start, benchmarkLabel, targetLabel);
}

}  // namespace tcoint
