#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tcoint/linctr.hpp"
#include "tcoint/tscore.hpp"

namespace tcoint {

struct GridConfig {
    int gridPoints = 300;
    double trim = 0.05;
    double betaRadius = 6.0;  ///< half-width of the beta grid in step-1 standard errors
    bool fixBeta = false;     ///< hold beta at the Engle-Granger estimate

    void validate() const;
};

/// 1 where z_{t-1} <= tau, else 2.
std::vector<int> classify_regimes(std::span<const double> zLag, double tau);

/// gridPoints order statistics of z at probabilities evenly spaced on
/// [trim, 1 - trim]. Ascending; repeated values are kept so grid indices are
/// stable across rescaling.
std::vector<double> tau_grid(std::span<const double> zLag, int gridPoints, double trim);

/// gridPoints values evenly spaced on beta +/- betaRadius * betaSe, or the
/// single Engle-Granger beta when fixBeta is set or betaSe is zero.
std::vector<double> beta_grid(const CointVector& eg, const GridConfig& cfg);

struct TvecmFit {
    double tau = 0.0;
    double beta = 0.0;
    CointVector coint;  ///< Engle-Granger vector with beta replaced by the fitted value
    int q = 0;
    int tEff = 0;
    Eigen::MatrixXd A1, A2;    ///< (2 + 2q) x 2; NaN for an empty regime
    Eigen::MatrixXd se1, se2;  ///< Eicker-White standard errors, same shape
    Eigen::MatrixXd residuals; ///< T_eff x 2 in time order
    Eigen::Matrix2d sigma;     ///< pooled residual covariance
    std::vector<int> regimeIndicator;
    std::array<int, 2> regimeCounts{};
    double logLik = 0.0;
    Eigen::MatrixXd regressors;  ///< T_eff x (2 + 2q), time order
    std::vector<std::string> columnNames;
    std::string benchmarkLabel;
    std::string targetLabel;
    int tauIndex = -1;   ///< position on the searched tau grid, -1 if not from a grid
    int betaIndex = -1;
};

/// Regime-wise least squares at (beta, tau). nullopt (an infeasible point)
/// when a regime holds fewer than trim * T_eff rows or a non-empty regime's
/// cross-product is singular. trim = 0 admits an empty regime.
std::optional<TvecmFit> fit_tvecm_at(const Panel& panel, int q, double beta, double tau, double trim,
                                     const CointVector& eg = {});

/// Per-regime, per-equation HC0 standard errors recomputed from the fit's
/// regressors and residuals.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> eicker_white_se(const TvecmFit& fit);

struct GridPoint {
    double beta = 0.0;
    double tau = 0.0;
};

/// Best feasible candidate by log-likelihood. Scores within 1e-12 tie and
/// go to the smaller tau, then the smaller beta. Throws DataError when no
/// candidate is feasible.
TvecmFit search_tvecm(const Panel& panel, int q, std::span<const GridPoint> candidates, double trim,
                      const CointVector& eg = {}, int workers = 1);

/// Joint (beta, tau) grid search, or tau-only when cfg.fixBeta.
TvecmFit grid_search_tvecm(const Panel& panel, int q, const CointVector& eg, const GridConfig& cfg,
                           int workers = 1);

struct CoefficientCell {
    double est = 0.0;
    double se = 0.0;
};

struct FitTableRow {
    int equation = 1;  ///< 1 = benchmark equation, 2 = target equation
    std::string variable;
    CoefficientCell regime1;
    CoefficientCell regime2;
};

/// Rows per equation: z_t, Constant, then d<benchmark>(-i), d<target>(-i).
std::vector<FitTableRow> render_fit_table(const TvecmFit& fit);

}  // namespace tcoint
