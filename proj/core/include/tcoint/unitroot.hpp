#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "tcoint/critical_values.hpp"
#include "tcoint/tscore.hpp"

namespace tcoint {

enum class LagCriterion { Bic, Aic };

const char* to_string(LagCriterion c);

struct UnitRootResult {
    double statistic = 0.0;
    int lagUsed = 0;
    Deterministic deterministic = Deterministic::Constant;
    CriticalValues criticalValues;
    std::array<bool, 3> reject{};  ///< indexed by Level
    int nobs = 0;                  ///< observations in the test regression
    std::optional<double> shortRunVariance;  ///< PP only
    std::optional<double> longRunVariance;   ///< PP only

    [[nodiscard]] bool rejects(Level level) const { return reject[static_cast<int>(level)]; }
};

/// Sets `reject` from `statistic` and `criticalValues`.
void decide(UnitRootResult& r);

/// floor(12 (T/100)^{1/4}); T >= 16.
int schwert_max_lag(int T);

/// Newey-West bandwidth floor(4 (T/100)^{2/9}).
int newey_west_bandwidth(int T);

struct LagOptions {
    std::optional<int> lags;  ///< nullopt selects by `criterion` up to maxLags
    LagCriterion criterion = LagCriterion::Bic;
    std::optional<int> maxLags;  ///< default schwert_max_lag(T)
};

/// t-ratio on y_{t-1} in dy_t = det + rho y_{t-1} + sum gamma_i dy_{t-i} + e_t.
UnitRootResult adf_test(std::span<const double> y, Deterministic d, const LagOptions& lags = {});
UnitRootResult adf_test(const Series& s, Deterministic d, const LagOptions& lags = {});

/// Newey-West long-run variance with Bartlett weights:
/// g0 + 2 sum_{j=1..L} (1 - j/(L+1)) g_j, g_j = (1/n) sum u_t u_{t-j}.
double newey_west_variance(std::span<const double> u, int bandwidth);

struct PpOptions {
    std::optional<int> bandwidth;
};

/// Phillips-Perron Z_t.
UnitRootResult pp_test(std::span<const double> y, Deterministic d, const PpOptions& opts = {});
UnitRootResult pp_test(const Series& s, Deterministic d, const PpOptions& opts = {});

/// [y_0, y_1 - a y_0, ..., y_{T-1} - a y_{T-2}].
std::vector<double> quasi_difference(std::span<const double> y, double a);

/// Local-to-unity parameter: -7 (constant) or -13.5 (constant + trend).
double dfgls_cbar(Deterministic d);

/// GLS detrending with a = 1 + cbar / T.
std::vector<double> gls_detrend(std::span<const double> y, Deterministic d, double cbar);

struct DfglsOptions {
    LagOptions lags;
    std::optional<double> cbar;  ///< override the standard local-to-unity value
};

/// ADF without deterministics on the GLS-detrended series.
UnitRootResult dfgls_test(std::span<const double> y, Deterministic d, const DfglsOptions& opts = {});
UnitRootResult dfgls_test(const Series& s, Deterministic d, const DfglsOptions& opts = {});

}  // namespace tcoint
