#pragma once

#include <array>

namespace tcoint {

enum class Deterministic { None, Constant, ConstantTrend };

enum class Level { OnePercent = 0, FivePercent = 1, TenPercent = 2 };

inline constexpr std::array<Level, 3> kLevels{Level::OnePercent, Level::FivePercent, Level::TenPercent};

const char* to_string(Level level);
const char* to_string(Deterministic d);

/// Left-tail critical values at 1%, 5% and 10%.
struct CriticalValues {
    std::array<double, 3> values{};

    [[nodiscard]] double at(Level level) const { return values[static_cast<int>(level)]; }
    [[nodiscard]] bool rejects(double statistic, Level level) const { return statistic < at(level); }
};

/// Dickey-Fuller t distribution (ADF, PP, and the DF-GLS constant case uses
/// `Deterministic::None`). MacKinnon (2010) response surfaces in 1/nobs.
CriticalValues dickey_fuller_critical_values(Deterministic d, int nobs);

/// Residual-based cointegration test with two variables (Engle-Granger).
/// `d` is the deterministic content of the cointegrating regression and
/// must be Constant or ConstantTrend.
CriticalValues engle_granger_critical_values(Deterministic d, int nobs);

/// DF-GLS with constant and trend: Elliott-Rothenberg-Stock tabulation,
/// interpolated linearly in 1/nobs.
CriticalValues dfgls_trend_critical_values(int nobs);

}  // namespace tcoint
