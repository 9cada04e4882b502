#include "tcoint/linctr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tcoint/errors.hpp"
#include "tcoint/ols.hpp"

namespace tcoint {

const char* to_string(EgDirection d) {
    return d == EgDirection::TargetOnBenchmark ? "target-on-benchmark" : "benchmark-on-target";
}

EngleGrangerResult engle_granger(const Panel& panel, const EngleGrangerOptions& opts) {
    const int T = static_cast<int>(panel.size());
    if (T < 30) throw DataError("Engle-Granger test needs at least 30 observations, got " + std::to_string(T));
    if (opts.deterministic == Deterministic::None) {
        throw_invalid("Engle-Granger step 1 always includes an intercept");
    }
    const auto b = panel.benchmark().values();
    const auto g = panel.target().values();
    for (auto s : {b, g}) {
        const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
        if (*lo == *hi) throw DataError("zero-variance input");
    }
    const bool targetDep = opts.direction == EgDirection::TargetOnBenchmark;
    const auto dep = targetDep ? g : b;
    const auto reg = targetDep ? b : g;
    const bool trend = opts.deterministic == Deterministic::ConstantTrend;
    const int k = trend ? 3 : 2;
    Eigen::MatrixXd X(T, k);
    Eigen::MatrixXd Y(T, 1);
    for (int t = 0; t < T; ++t) {
        X(t, 0) = 1.0;
        X(t, 1) = reg[t];
        if (trend) X(t, 2) = t + 1.0;
        Y(t, 0) = dep[t];
    }
    const auto fit = try_least_squares(X, Y);
    if (!fit) throw NumericalError("degenerate cointegration regression");
    const double rss = fit->residuals.squaredNorm();
    const double tss = (Y.array() - Y.mean()).matrix().squaredNorm();
    if (!(rss > 1e-20 * tss)) throw NumericalError("degenerate cointegration regression");

    EngleGrangerResult r;
    r.direction = opts.direction;
    r.slopeIntercept = fit->coef(0, 0);
    r.slope = fit->coef(1, 0);
    const double s2 = rss / (T - k);
    r.slopeSe = std::sqrt(s2 * fit->xtxInv(1, 1));
    if (targetDep) {
        if (!(std::abs(r.slope) > 1e-12)) throw NumericalError("degenerate cointegration regression");
        r.coint.beta = 1.0 / r.slope;
        r.coint.intercept = -r.slopeIntercept / r.slope;
        r.coint.betaSe = r.slopeSe / (r.slope * r.slope);
    } else {
        r.coint.beta = r.slope;
        r.coint.intercept = r.slopeIntercept;
        r.coint.betaSe = r.slopeSe;
    }
    r.residuals.assign(fit->residuals.data(), fit->residuals.data() + T);

    try {
        r.residualTest = adf_test(r.residuals, Deterministic::None, opts.lags);
    } catch (const DataError&) {
        throw NumericalError("degenerate cointegration regression");
    }
    r.residualTest.deterministic = opts.deterministic;
    r.residualTest.criticalValues = engle_granger_critical_values(opts.deterministic, r.residualTest.nobs);
    decide(r.residualTest);
    r.cointegrated = r.residualTest.reject;
    return r;
}

VecmFit fit_linear_vecm(const Panel& panel, int q, const CointVector& coint, int alignLag) {
    if (q < 0) throw_invalid("lag order q must be >= 0");
    const int need = std::max(q, alignLag) + 10;
    if (static_cast<int>(panel.size()) < need) {
        throw DataError("sample of " + std::to_string(panel.size()) + " observations too short for a VECM with q = " +
                        std::to_string(q) + "; need at least " + std::to_string(need));
    }
    const RegressorSet reg = build_regressors(panel, q, coint.beta, alignLag);
    const OlsFit ols = least_squares(reg.X, reg.Y, reg.columnNames);
    VecmFit fit;
    fit.A = ols.coef;
    fit.residuals = ols.residuals;
    fit.xtxInv = ols.xtxInv;
    fit.tEff = reg.rows();
    fit.sigma = fit.residuals.transpose() * fit.residuals / static_cast<double>(fit.tEff);
    fit.logLik = concentrated_loglik(fit.sigma, fit.tEff);
    if (!std::isfinite(fit.logLik)) throw NumericalError("singular residual covariance in linear VECM");
    fit.q = q;
    fit.coint = coint;
    fit.columnNames = reg.columnNames;
    return fit;
}

double information_criterion(const VecmFit& fit, LagCriterion c) {
    const double k = static_cast<double>(fit.A.size());
    const double penalty = c == LagCriterion::Bic ? std::log(static_cast<double>(fit.tEff)) : 2.0;
    return -2.0 * fit.logLik + penalty * k;
}

int auto_max_lag(int T) {
    const int cap = std::max(0, T - 10);
    return T - 1 >= 16 ? std::min(schwert_max_lag(T - 1), cap) : 0;
}

int select_lag(const Panel& panel, const CointVector& coint, std::optional<int> qMax, LagCriterion c) {
    const int T = static_cast<int>(panel.size());
    const int maxQ = qMax ? *qMax : auto_max_lag(T);
    if (maxQ < 0) throw_invalid("maximum lag order must be >= 0");
    if (maxQ == 0) return 0;
    int best = 0;
    double bestIc = std::numeric_limits<double>::infinity();
    for (int q = 0; q <= maxQ; ++q) {
        const double ic = information_criterion(fit_linear_vecm(panel, q, coint, maxQ), c);
        if (ic < bestIc) {
            bestIc = ic;
            best = q;
        }
    }
    return best;
}

}  // namespace tcoint
