#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tcoint/simulate.hpp"
#include "tcoint/tscore.hpp"

namespace fixtures {

inline std::vector<double> random_walk(int n, std::uint64_t seed, double drift = 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> y(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        s += drift + g(rng);
        y[i] = s;
    }
    return y;
}

inline std::vector<double> ar1(int n, double rho, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> y(n);
    double s = g(rng) / std::sqrt(1.0 - rho * rho);
    for (int i = 0; i < n; ++i) {
        if (i > 0) s = rho * s + g(rng);
        y[i] = s;
    }
    return y;
}

/// q = 1 layout rows: Constant, z, d benchmark(-1), d target(-1).
inline Eigen::MatrixXd coef(std::initializer_list<std::initializer_list<double>> rows) {
    Eigen::MatrixXd A(rows.size(), 2);
    int r = 0;
    for (const auto& row : rows) {
        int c = 0;
        for (double v : row) A(r, c++) = v;
        ++r;
    }
    return A;
}

inline Eigen::MatrixXd linear_a() {
    return coef({{0.1, 0.1}, {-0.2, 0.15}, {0.25, 0.05}, {0.0, 0.2}});
}

/// Regime 1 barely adjusts; regime 2 corrects quickly with different
/// intercepts and dynamics.
inline tcoint::DgpSpec threshold_spec(int T, std::uint64_t seed) {
    tcoint::DgpSpec s;
    s.beta = 1.0;
    s.tau = 0.0;
    s.A1 = coef({{0.5, -0.5}, {-0.02, 0.02}, {0.3, 0.0}, {0.0, 0.2}});
    s.A2 = coef({{-0.5, 0.5}, {-0.5, 0.2}, {-0.1, 0.1}, {0.3, -0.1}});
    s.noiseCov << 1.0, 0.3, 0.3, 1.0;
    s.T = T;
    s.burnIn = 200;
    s.seed = seed;
    s.benchmarkLabel = "US";
    s.targetLabel = "Mex";
    return s;
}

inline tcoint::DgpSpec linear_spec(int T, std::uint64_t seed) {
    tcoint::DgpSpec s = threshold_spec(T, seed);
    s.A1 = linear_a();
    s.A2 = linear_a();
    return s;
}

}  // namespace fixtures
