#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tcoint/tscore.hpp"
#include "tcoint/unitroot.hpp"

namespace tcoint {

/// Cointegrating vector normalized as alpha = (1, -beta)' on
/// (benchmark, target), so z_t = benchmark_t - beta * target_t.
struct CointVector {
    double beta = 0.0;
    double intercept = 0.0;  ///< equilibrium level: benchmark ~ intercept + beta * target
    double betaSe = 0.0;     ///< step-1 OLS standard error of beta

    [[nodiscard]] std::array<double, 2> alpha() const { return {1.0, -beta}; }
};

/// Which variable is the dependent one in the step-1 regression.
enum class EgDirection { TargetOnBenchmark, BenchmarkOnTarget };

const char* to_string(EgDirection d);

struct EngleGrangerOptions {
    Deterministic deterministic = Deterministic::Constant;
    EgDirection direction = EgDirection::TargetOnBenchmark;
    LagOptions lags;
};

struct EngleGrangerResult {
    CointVector coint;
    EgDirection direction = EgDirection::TargetOnBenchmark;
    double slope = 0.0;         ///< raw step-1 slope in the chosen direction
    double slopeSe = 0.0;
    double slopeIntercept = 0.0;
    std::vector<double> residuals;
    UnitRootResult residualTest;  ///< ADF on residuals with Engle-Granger critical values
    std::array<bool, 3> cointegrated{};

    [[nodiscard]] bool cointegrated_at(Level l) const { return cointegrated[static_cast<int>(l)]; }
};

EngleGrangerResult engle_granger(const Panel& panel, const EngleGrangerOptions& opts = {});

struct VecmFit {
    Eigen::MatrixXd A;          ///< (2 + 2q) x 2, columns are the benchmark and target equations
    Eigen::MatrixXd residuals;  ///< T_eff x 2
    Eigen::Matrix2d sigma;      ///< residuals' residuals / T_eff
    Eigen::MatrixXd xtxInv;
    double logLik = 0.0;
    int q = 0;
    int tEff = 0;
    CointVector coint;
    std::vector<std::string> columnNames;
};

/// Equation-by-equation least squares on the shared regressor matrix.
/// `alignLag` > q fits on the sample of a larger lag order.
VecmFit fit_linear_vecm(const Panel& panel, int q, const CointVector& coint, int alignLag = -1);

/// Number of free coefficients 2 (2 + 2q).
double information_criterion(const VecmFit& fit, LagCriterion c);

/// Largest lag order searched when qMax is automatic: Schwert's rule on
/// T - 1, capped so every candidate keeps at least 10 degrees of freedom.
int auto_max_lag(int T);

/// argmin over q in 0..qMax of the criterion, all fits on the common sample
/// aligned to qMax. Ties go to the smaller q.
int select_lag(const Panel& panel, const CointVector& coint, std::optional<int> qMax = std::nullopt,
               LagCriterion c = LagCriterion::Bic);

}  // namespace tcoint
