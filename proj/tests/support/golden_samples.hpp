#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tcoint/report.hpp"
#include "tcoint/suplm.hpp"
#include "tcoint/tvecm.hpp"

// Fixed table inputs rendered against the files in tests/golden.
namespace golden {

using namespace tcoint;

inline std::vector<FitTableRow> sample_fit_rows() {
    return {
        {1, "z_t", {-0.35, 0.17}, {-0.0421, 0.0912}},
        {1, "Constant", {12.5, 4.25}, {0.0, 0.3333}},
        {1, "dUS(-1)", {0.004, 0.11}, {-0.2, 0.0}},
        {1, "dMex(-1)", {0.31, 0.08}, {1.005, 0.5}},
        {2, "z_t", {0.0, 0.0}, {0.22, 0.1}},
        {2, "Constant", {-7.125, 2.0}, {std::nan(""), std::nan("")}},
        {2, "dUS(-1)", {-0.0004, 0.02}, {0.55, 0.21}},
        {2, "dMex(-1)", {0.06, 0.07}, {-1.4, 0.6}},
    };
}

inline std::vector<MarketTest> sample_tests() {
    std::vector<MarketTest> m(3);
    m[0].market = "Mex";
    m[0].result.statistic = 21.834;
    m[0].result.pValue = 0.00999;
    m[0].result.tauHat = -5597.03;
    m[0].result.replications = 5000;
    m[0].result.seed = 1;
    m[1].market = "Chi";
    m[1].result.statistic = 17.5;
    m[1].result.pValue = 0.0002;
    m[1].result.tauHat = 12.25;
    m[1].result.replications = 5000;
    m[1].result.seed = 1;
    m[2].market = "Venezuela";
    m[2].result.statistic = 8.004;
    m[2].result.pValue = 0.4123;
    m[2].result.tauHat = -0.04;
    m[2].result.replications = 5000;
    m[2].result.seed = 1;
    return m;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace golden
