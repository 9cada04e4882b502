#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tcoint/linctr.hpp"
#include "tcoint/tscore.hpp"
#include "tcoint/tvecm.hpp"

namespace tcoint {

/// Robust Wald-form statistic for equal regime coefficients:
/// vec(A1 - A2)' (V1 + V2)^{-1} vec(A1 - A2), V_r the HC0 covariance of
/// vec(A_r). nullopt when trim is violated, a regime is singular, or
/// V1 + V2 is not positive definite.
std::optional<double> lm_statistic_split(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                         std::span<const int> indicator, double trim);

std::optional<double> lm_statistic_at(const Panel& panel, int q, const CointVector& betaNull, double tau,
                                      double trim);

struct SupLmStatistic {
    double statistic = 0.0;
    double tauHat = 0.0;
    double beta = 0.0;
    int tauIndex = -1;
    int betaIndex = 0;
    std::vector<double> tauGrid;  ///< grid searched at the chosen beta
    int evaluated = 0;
    int feasible = 0;
};

/// Supremum over explicit tau candidates at a fixed beta.
SupLmStatistic suplm_over(const Panel& panel, int q, double beta, std::span<const double> taus, double trim);

/// Supremum over the tau grid built from z_{t-1}(beta). With `jointBeta`
/// the beta grid of cfg is searched too. Ties (within 1e-12) go to the
/// smaller tau, then the smaller beta.
SupLmStatistic suplm_statistic(const Panel& panel, int q, const CointVector& betaNull, const GridConfig& cfg,
                               bool jointBeta = false);

enum class BootstrapScheme { ParametricGaussian, ResidualResample };

const char* to_string(BootstrapScheme s);
BootstrapScheme parse_bootstrap_scheme(const std::string& s);

struct BootstrapOptions {
    int replications = 5000;
    std::uint64_t seed = 1;
    BootstrapScheme scheme = BootstrapScheme::ParametricGaussian;
    int workers = 1;
    bool jointBeta = false;
    EngleGrangerOptions eg;
};

struct SupLmResult {
    double statistic = 0.0;
    double pValue = 1.0;
    double tauHat = 0.0;
    int tauIndex = -1;
    double betaNull = 0.0;
    int q = 0;
    int replications = 0;
    std::vector<double> bootstrapStats;  ///< +inf marks a replication that failed twice
    int failedReplications = 0;
    std::uint64_t seed = 0;
    BootstrapScheme scheme = BootstrapScheme::ParametricGaussian;
    std::vector<double> tauGrid;
};

/// (1 + #{draws >= statistic}) / (1 + draws.size()).
double add_one_pvalue(double statistic, std::span<const double> draws);

/// Bootstrap p-value of the Sup-LM test under the fitted linear VECM null.
/// Each replication starts from the observed first q + 1 levels, re-runs
/// Engle-Granger and the full Sup-LM search. Replication r draws from
/// stream 2r (retry: 2r + 1) of the master seed, so the result does not
/// depend on the worker count.
SupLmResult bootstrap_pvalue(const Panel& panel, int q, const GridConfig& cfg, const BootstrapOptions& opts);

/// Simulated panel for one bootstrap stream; exposed for tests.
Panel bootstrap_panel(const Panel& panel, const VecmFit& null, BootstrapScheme scheme, std::uint64_t seed,
                      std::uint64_t stream);

struct MarketTest {
    std::string market;
    SupLmResult result;
};

struct TestTableRow {
    std::string market;
    std::string lm;
    std::string pValue;
    std::string tauHat;
};

/// Rows {market, LM statistic, p-value in percent, tau-hat}.
std::vector<TestTableRow> render_test_table(std::span<const MarketTest> results);

}  // namespace tcoint
