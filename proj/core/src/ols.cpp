#include "tcoint/ols.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "tcoint/errors.hpp"

namespace tcoint {

namespace {

struct QrSolve {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
    bool fullRank = false;
};

QrSolve factor(const Eigen::MatrixXd& X) {
    QrSolve s{Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(X), false};
    s.fullRank = X.rows() >= X.cols() && s.qr.rank() == X.cols();
    return s;
}

OlsFit finish(const QrSolve& s, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
    const Eigen::Index k = X.cols();
    OlsFit fit;
    fit.coef = s.qr.solve(Y);
    fit.residuals = Y - X * fit.coef;
    const Eigen::MatrixXd R = s.qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd Rinv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd inner = Rinv * Rinv.transpose();
    const auto& P = s.qr.colsPermutation();
    fit.xtxInv = P * inner * P.transpose();
    return fit;
}

}  // namespace

std::optional<OlsFit> try_least_squares(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
    if (X.rows() < X.cols() || X.cols() == 0) return std::nullopt;
    const QrSolve s = factor(X);
    if (!s.fullRank) return std::nullopt;
    return finish(s, X, Y);
}

OlsFit least_squares(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                     const std::vector<std::string>& columnNames) {
    if (X.rows() < X.cols()) {
        throw NumericalError("least squares needs at least " + std::to_string(X.cols()) +
                             " observations, got " + std::to_string(X.rows()));
    }
    const QrSolve s = factor(X);
    if (!s.fullRank) {
        std::string cols;
        const auto& idx = s.qr.colsPermutation().indices();
        for (Eigen::Index i = s.qr.rank(); i < X.cols(); ++i) {
            const int c = idx(i);
            if (!cols.empty()) cols += ", ";
            cols += c < static_cast<int>(columnNames.size()) ? columnNames[c] : "column " + std::to_string(c);
        }
        throw NumericalError("singular regressor cross-product; collinear columns: " + cols);
    }
    return finish(s, X, Y);
}

Eigen::MatrixXd hc0_covariance(const Eigen::MatrixXd& X, const Eigen::MatrixXd& xtxInv,
                               const Eigen::VectorXd& e) {
    const Eigen::MatrixXd Xe = X.array().colwise() * e.array();
    const Eigen::MatrixXd meat = Xe.transpose() * Xe;
    return xtxInv * meat * xtxInv;
}

Eigen::MatrixXd hc0_covariance_vec(const Eigen::MatrixXd& X, const Eigen::MatrixXd& xtxInv,
                                   const Eigen::MatrixXd& E) {
    const Eigen::Index k = X.cols(), m = E.cols();
    Eigen::MatrixXd scores(X.rows(), k * m);
    for (Eigen::Index j = 0; j < m; ++j) {
        scores.middleCols(j * k, k) = X.array().colwise() * E.col(j).array();
    }
    const Eigen::MatrixXd meat = scores.transpose() * scores;
    Eigen::MatrixXd V(k * m, k * m);
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
            V.block(a * k, b * k, k, k) = xtxInv * meat.block(a * k, b * k, k, k) * xtxInv;
        }
    }
    return V;
}

double concentrated_loglik(const Eigen::MatrixXd& sigma, int n) {
    const double det = sigma.determinant();
    if (!(det > 0.0)) return -std::numeric_limits<double>::infinity();
    const double p = static_cast<double>(sigma.rows());
    return -0.5 * n * (p * std::log(2.0 * std::numbers::pi) + std::log(det) + p);
}

}  // namespace tcoint
