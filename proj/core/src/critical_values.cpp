#include "tcoint/critical_values.hpp"

#include <algorithm>

#include "tcoint/errors.hpp"

namespace tcoint {

namespace {

using Surface = std::array<std::array<double, 4>, 3>;

// MacKinnon (2010), "Critical Values for Cointegration Tests", Table 2.
// Rows: 1%, 5%, 10%; columns: beta_inf, beta_1, beta_2, beta_3.
constexpr Surface kTauNc1{{{-2.56574, -2.2358, -3.627, 0.0},
                           {-1.94100, -0.2686, -3.365, 31.223},
                           {-1.61682, 0.2656, -2.714, 25.364}}};
constexpr Surface kTauC1{{{-3.43035, -6.5393, -16.786, -79.433},
                          {-2.86154, -2.8903, -4.234, -40.040},
                          {-2.56677, -1.5384, -2.809, 0.0}}};
constexpr Surface kTauCt1{{{-3.95877, -9.0531, -28.428, -134.155},
                           {-3.41049, -4.3904, -9.036, -45.374},
                           {-3.12705, -2.5856, -3.925, -22.380}}};
constexpr Surface kTauC2{{{-3.89644, -10.9519, -33.527, 0.0},
                          {-3.33613, -6.1101, -6.823, 0.0},
                          {-3.04445, -4.2412, -2.720, 0.0}}};
constexpr Surface kTauCt2{{{-4.32762, -15.4387, -35.679, 0.0},
                           {-3.78057, -9.5106, -12.074, 0.0},
                           {-3.49631, -7.0815, -7.538, 21.892}}};

CriticalValues evaluate(const Surface& s, int nobs) {
    if (nobs < 1) throw_invalid("critical values need nobs >= 1");
    const double u = 1.0 / nobs;
    CriticalValues cv;
    for (int i = 0; i < 3; ++i) {
        const auto& b = s[i];
        cv.values[i] = b[0] + u * (b[1] + u * (b[2] + u * b[3]));
    }
    return cv;
}

// Elliott, Rothenberg & Stock (1996), Table 1.C (GLS-detrended, trend case).
struct ErsRow {
    double inv_t;
    std::array<double, 3> cv;
};
constexpr std::array<ErsRow, 4> kErsTrend{{{1.0 / 50, {-3.77, -3.19, -2.89}},
                                           {1.0 / 100, {-3.58, -3.03, -2.74}},
                                           {1.0 / 200, {-3.46, -2.93, -2.64}},
                                           {0.0, {-3.48, -2.89, -2.57}}}};

}  // namespace

const char* to_string(Level level) {
    switch (level) {
        case Level::OnePercent: return "1%";
        case Level::FivePercent: return "5%";
        case Level::TenPercent: return "10%";
    }
    return "?";
}

const char* to_string(Deterministic d) {
    switch (d) {
        case Deterministic::None: return "none";
        case Deterministic::Constant: return "constant";
        case Deterministic::ConstantTrend: return "constant+trend";
    }
    return "?";
}

CriticalValues dickey_fuller_critical_values(Deterministic d, int nobs) {
    switch (d) {
        case Deterministic::None: return evaluate(kTauNc1, nobs);
        case Deterministic::Constant: return evaluate(kTauC1, nobs);
        case Deterministic::ConstantTrend: return evaluate(kTauCt1, nobs);
    }
    throw_invalid("unknown deterministic specification");
}

CriticalValues engle_granger_critical_values(Deterministic d, int nobs) {
    switch (d) {
        case Deterministic::Constant: return evaluate(kTauC2, nobs);
        case Deterministic::ConstantTrend: return evaluate(kTauCt2, nobs);
        case Deterministic::None: break;
    }
    throw_invalid("Engle-Granger critical values need a constant in the cointegrating regression");
}

CriticalValues dfgls_trend_critical_values(int nobs) {
    if (nobs < 1) throw_invalid("critical values need nobs >= 1");
    const double u = std::min(1.0 / nobs, kErsTrend.front().inv_t);
    CriticalValues cv;
    for (std::size_t r = 0; r + 1 < kErsTrend.size(); ++r) {
        const auto& hi = kErsTrend[r];
        const auto& lo = kErsTrend[r + 1];
        if (u <= hi.inv_t && u >= lo.inv_t) {
            const double w = (u - lo.inv_t) / (hi.inv_t - lo.inv_t);
            for (int i = 0; i < 3; ++i) cv.values[i] = lo.cv[i] + w * (hi.cv[i] - lo.cv[i]);
            return cv;
        }
    }
    return CriticalValues{kErsTrend.back().cv};
}

}  // namespace tcoint
