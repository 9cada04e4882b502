#include "tcoint/unitroot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tcoint/errors.hpp"
#include "tcoint/ols.hpp"

namespace tcoint {

namespace {

int deterministic_columns(Deterministic d) {
    switch (d) {
        case Deterministic::None: return 0;
        case Deterministic::Constant: return 1;
        case Deterministic::ConstantTrend: return 2;
    }
    return 0;
}

void require_nonconstant(std::span<const double> y) {
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    if (y.empty() || *lo == *hi) throw DataError("zero-variance input");
}

struct AdfFit {
    double tstat = 0.0;
    double rss = 0.0;
    double s2 = 0.0;
    double rhoSe = 0.0;
    int nobs = 0;
    int k = 0;
    Eigen::VectorXd residuals;
};

// Rows t = start .. n-1 (0-based sample index), start >= p + 1.
AdfFit adf_regression(std::span<const double> y, int p, Deterministic d, int start) {
    const int n = static_cast<int>(y.size());
    const int nd = deterministic_columns(d);
    const int k = nd + 1 + p;
    const int rows = n - start;
    if (rows <= k) throw DataError("series too short for the unit-root regression");
    Eigen::MatrixXd X(rows, k);
    Eigen::MatrixXd Y(rows, 1);
    for (int i = 0; i < rows; ++i) {
        const int t = start + i;
        int c = 0;
        if (nd >= 1) X(i, c++) = 1.0;
        if (nd >= 2) X(i, c++) = static_cast<double>(t);
        X(i, c++) = y[t - 1];
        for (int l = 1; l <= p; ++l) X(i, c++) = y[t - l] - y[t - l - 1];
        Y(i, 0) = y[t] - y[t - 1];
    }
    const OlsFit fit = least_squares(X, Y);
    AdfFit out;
    out.nobs = rows;
    out.k = k;
    out.residuals = fit.residuals.col(0);
    out.rss = out.residuals.squaredNorm();
    const double scale = Y.squaredNorm() + X.col(nd).squaredNorm();
    if (!(out.rss > 1e-26 * scale)) {
        throw NumericalError("degenerate unit-root regression: zero residual variance");
    }
    out.s2 = out.rss / (rows - k);
    out.rhoSe = std::sqrt(out.s2 * fit.xtxInv(nd, nd));
    out.tstat = fit.coef(nd, 0) / out.rhoSe;
    return out;
}

double information_criterion(const AdfFit& f, LagCriterion c) {
    const double n = f.nobs;
    const double penalty = c == LagCriterion::Bic ? std::log(n) : 2.0;
    return n * std::log(f.rss / n) + penalty * f.k;
}

// Chooses p on the common sample starting at maxLag + 1, then refits on the
// full sample available for that p.
AdfFit adf_with_lags(std::span<const double> y, Deterministic d, const LagOptions& opts, int& lagUsed) {
    const int n = static_cast<int>(y.size());
    if (opts.lags) {
        const int p = *opts.lags;
        if (p < 0) throw_invalid("lag count must be >= 0");
        if (n < p + 10) {
            throw DataError("series of length " + std::to_string(n) + " too short for " + std::to_string(p) +
                            " lags; need at least " + std::to_string(p + 10));
        }
        lagUsed = p;
        return adf_regression(y, p, d, p + 1);
    }
    if (n < 10) throw DataError("series of length " + std::to_string(n) + " too short; need at least 10");
    int maxLag = opts.maxLags ? *opts.maxLags : (n >= 16 ? schwert_max_lag(n) : 0);
    if (maxLag < 0) throw_invalid("maximum lag must be >= 0");
    maxLag = std::min(maxLag, n - 10);
    int best = 0;
    double bestIc = std::numeric_limits<double>::infinity();
    for (int p = 0; p <= maxLag; ++p) {
        const double ic = information_criterion(adf_regression(y, p, d, maxLag + 1), opts.criterion);
        if (ic < bestIc) {
            bestIc = ic;
            best = p;
        }
    }
    lagUsed = best;
    return adf_regression(y, best, d, best + 1);
}

}  // namespace

const char* to_string(LagCriterion c) { return c == LagCriterion::Bic ? "bic" : "aic"; }

void decide(UnitRootResult& r) {
    for (Level l : kLevels) r.reject[static_cast<int>(l)] = r.criticalValues.rejects(r.statistic, l);
}

int schwert_max_lag(int T) {
    if (T < 16) throw_invalid("Schwert lag rule needs T >= 16, got " + std::to_string(T));
    return static_cast<int>(std::floor(12.0 * std::pow(T / 100.0, 0.25)));
}

int newey_west_bandwidth(int T) {
    if (T < 1) throw_invalid("bandwidth rule needs T >= 1");
    return static_cast<int>(std::floor(4.0 * std::pow(T / 100.0, 2.0 / 9.0)));
}

UnitRootResult adf_test(std::span<const double> y, Deterministic d, const LagOptions& lags) {
    require_nonconstant(y);
    UnitRootResult r;
    const AdfFit f = adf_with_lags(y, d, lags, r.lagUsed);
    r.statistic = f.tstat;
    r.deterministic = d;
    r.nobs = f.nobs;
    r.criticalValues = dickey_fuller_critical_values(d, f.nobs);
    decide(r);
    return r;
}

UnitRootResult adf_test(const Series& s, Deterministic d, const LagOptions& lags) {
    return adf_test(s.values(), d, lags);
}

double newey_west_variance(std::span<const double> u, int bandwidth) {
    if (bandwidth < 0) throw_invalid("bandwidth must be >= 0");
    const std::size_t n = u.size();
    if (n == 0) throw_invalid("empty residual sequence");
    auto autocov = [&](std::size_t j) {
        double s = 0.0;
        for (std::size_t t = j; t < n; ++t) s += u[t] * u[t - j];
        return s / static_cast<double>(n);
    };
    double lrv = autocov(0);
    for (int j = 1; j <= bandwidth && static_cast<std::size_t>(j) < n; ++j) {
        lrv += 2.0 * (1.0 - j / (bandwidth + 1.0)) * autocov(j);
    }
    return lrv;
}

UnitRootResult pp_test(std::span<const double> y, Deterministic d, const PpOptions& opts) {
    require_nonconstant(y);
    const int n = static_cast<int>(y.size());
    if (n < 20) throw DataError("Phillips-Perron test needs at least 20 observations");
    const int L = opts.bandwidth ? *opts.bandwidth : newey_west_bandwidth(n);
    if (L < 0) throw_invalid("bandwidth must be >= 0");
    const AdfFit f = adf_regression(y, 0, d, 1);
    const std::vector<double> u(f.residuals.data(), f.residuals.data() + f.residuals.size());
    const double g0 = f.rss / f.nobs;
    const double lrv = newey_west_variance(u, L);
    if (!(lrv > 0.0)) throw NumericalError("non-positive long-run variance");
    const double lambda = std::sqrt(lrv);
    const double s = std::sqrt(f.s2);
    UnitRootResult r;
    r.statistic = std::sqrt(g0 / lrv) * f.tstat - (lrv - g0) * f.nobs * f.rhoSe / (2.0 * lambda * s);
    r.lagUsed = L;
    r.deterministic = d;
    r.nobs = f.nobs;
    r.shortRunVariance = g0;
    r.longRunVariance = lrv;
    r.criticalValues = dickey_fuller_critical_values(d, f.nobs);
    decide(r);
    return r;
}

UnitRootResult pp_test(const Series& s, Deterministic d, const PpOptions& opts) {
    return pp_test(s.values(), d, opts);
}

std::vector<double> quasi_difference(std::span<const double> y, double a) {
    std::vector<double> out(y.size());
    if (y.empty()) return out;
    out[0] = y[0];
    for (std::size_t t = 1; t < y.size(); ++t) out[t] = y[t] - a * y[t - 1];
    return out;
}

double dfgls_cbar(Deterministic d) {
    switch (d) {
        case Deterministic::Constant: return -7.0;
        case Deterministic::ConstantTrend: return -13.5;
        case Deterministic::None: break;
    }
    throw_invalid("DF-GLS needs a constant or constant+trend specification");
}

std::vector<double> gls_detrend(std::span<const double> y, Deterministic d, double cbar) {
    if (d == Deterministic::None) throw_invalid("DF-GLS needs a constant or constant+trend specification");
    const int n = static_cast<int>(y.size());
    const int nd = deterministic_columns(d);
    if (n <= nd) throw DataError("series too short for GLS detrending");
    const double a = 1.0 + cbar / n;
    std::vector<double> one(n, 1.0), trend(n);
    for (int t = 0; t < n; ++t) trend[t] = t + 1.0;
    const auto ya = quasi_difference(y, a);
    const auto ca = quasi_difference(one, a);
    const auto ta = quasi_difference(trend, a);
    Eigen::MatrixXd D(n, nd);
    Eigen::MatrixXd Y(n, 1);
    for (int t = 0; t < n; ++t) {
        D(t, 0) = ca[t];
        if (nd == 2) D(t, 1) = ta[t];
        Y(t, 0) = ya[t];
    }
    const OlsFit fit = least_squares(D, Y);
    std::vector<double> out(n);
    for (int t = 0; t < n; ++t) {
        double det = fit.coef(0, 0);
        if (nd == 2) det += fit.coef(1, 0) * trend[t];
        out[t] = y[t] - det;
    }
    return out;
}

UnitRootResult dfgls_test(std::span<const double> y, Deterministic d, const DfglsOptions& opts) {
    require_nonconstant(y);
    const double cbar = opts.cbar ? *opts.cbar : dfgls_cbar(d);
    const auto detrended = gls_detrend(y, d, cbar);
    UnitRootResult r;
    const AdfFit f = adf_with_lags(detrended, Deterministic::None, opts.lags, r.lagUsed);
    r.statistic = f.tstat;
    r.deterministic = d;
    r.nobs = f.nobs;
    r.criticalValues = d == Deterministic::Constant
                           ? dickey_fuller_critical_values(Deterministic::None, f.nobs)
                           : dfgls_trend_critical_values(f.nobs);
    decide(r);
    return r;
}

UnitRootResult dfgls_test(const Series& s, Deterministic d, const DfglsOptions& opts) {
    return dfgls_test(s.values(), d, opts);
}

}  // namespace tcoint
