#include "tcoint/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tcoint {

namespace {

std::string pad(const std::string& s, std::size_t width, bool right) {
    if (s.size() >= width) return s;
    const std::string fill(width - s.size(), ' ');
    return right ? fill + s : s + fill;
}

}  // namespace

std::string format_fixed(double x, int decimals) {
    if (std::isnan(x)) return "n/a";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::string format_coefficient(double x) {
    if (std::isnan(x)) return "n/a";
    return format_fixed(x, std::abs(x) < 0.005 ? 3 : 2);
}

std::string format_estimate(const CoefficientCell& c) {
    return format_coefficient(c.est) + " (" + format_coefficient(c.se) + ")";
}

std::string format_percent(double p) {
    const double v = 100.0 * p;
    if (v < 0.05) return "<0.1%";
    return format_fixed(v, 1) + "%";
}

std::string format_test_table(std::span<const TestTableRow> rows) {
    const std::vector<std::string> header{"Market", "LM Test statistic", "p-value", "Threshold estimates"};
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
    for (const auto& r : rows) {
        w[0] = std::max(w[0], r.market.size());
        w[1] = std::max(w[1], r.lm.size());
        w[2] = std::max(w[2], r.pValue.size());
        w[3] = std::max(w[3], r.tauHat.size());
    }
    std::ostringstream out;
    out << pad(header[0], w[0], false) << "  " << pad(header[1], w[1], true) << "  " << pad(header[2], w[2], true)
        << "  " << pad(header[3], w[3], true) << '\n';
    for (const auto& r : rows) {
        out << pad(r.market, w[0], false) << "  " << pad(r.lm, w[1], true) << "  " << pad(r.pValue, w[2], true) << "  "
            << pad(r.tauHat, w[3], true) << '\n';
    }
    return out.str();
}

nlohmann::json test_table_json(std::span<const MarketTest> results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : results) {
        arr.push_back({{"market", m.market},
                       {"lm", m.result.statistic},
                       {"pvalue", m.result.pValue},
                       {"tau_hat", m.result.tauHat},
                       {"replications", m.result.replications},
                       {"seed", m.result.seed}});
    }
    return arr;
}

std::string format_fit_table(std::span<const FitTableRow> rows) {
    const std::string h0 = "Variable", h1 = "Estimations in Regime 1", h2 = "Estimations in Regime 2";
    std::size_t w0 = h0.size(), w1 = h1.size(), w2 = h2.size();
    std::vector<std::array<std::string, 3>> cells;
    for (const auto& r : rows) {
        cells.push_back({r.variable, format_estimate(r.regime1), format_estimate(r.regime2)});
        w0 = std::max(w0, cells.back()[0].size());
        w1 = std::max(w1, cells.back()[1].size());
        w2 = std::max(w2, cells.back()[2].size());
    }
    std::ostringstream out;
    out << pad(h0, w0, false) << "  " << pad(h1, w1, false) << "  " << h2 << '\n';
    int eq = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].equation != eq) {
            eq = rows[i].equation;
            out << "Equation " << eq << '\n';
        }
        out << pad(cells[i][0], w0, false) << "  " << pad(cells[i][1], w1, false) << "  " << cells[i][2] << '\n';
    }
    return out.str();
}

nlohmann::json fit_table_json(std::span<const FitTableRow> rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"equation", r.equation},
                       {"variable", r.variable},
                       {"regime1", {{"est", r.regime1.est}, {"se", r.regime1.se}}},
                       {"regime2", {{"est", r.regime2.est}, {"se", r.regime2.se}}}});
    }
    return arr;
}

}  // namespace tcoint
