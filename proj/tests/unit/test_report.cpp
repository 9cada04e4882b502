#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "golden_samples.hpp"
#include "tcoint/report.hpp"

using namespace tcoint;

namespace {

using golden::sample_fit_rows;
using golden::sample_tests;

// Set TCOINT_UPDATE_GOLDEN=1 to rewrite the files after an intended change.
void expect_golden(const std::string& name, const std::string& actual) {
    const std::filesystem::path path = std::filesystem::path(TCOINT_GOLDEN_DIR) / name;
    if (std::getenv("TCOINT_UPDATE_GOLDEN")) {
        std::ofstream(path, std::ios::binary) << actual;
        return;
    }
    std::ifstream in(path, std::ios::binary);
    ASSERT_TRUE(in) << "missing golden file " << path;
    std::ostringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(actual, ss.str()) << "golden mismatch for " << name;
}

}  // namespace

TEST(Format, Coefficients) {
    EXPECT_EQ(format_estimate({-0.35, 0.17}), "-0.35 (0.17)");
    EXPECT_EQ(format_coefficient(0.0), "0.000");
    EXPECT_EQ(format_estimate({0.0, 0.0}), "0.000 (0.000)");
    EXPECT_EQ(format_coefficient(-0.0004), "0.000");
    EXPECT_EQ(format_coefficient(0.004), "0.004");
    EXPECT_EQ(format_coefficient(0.006), "0.01");
    EXPECT_EQ(format_coefficient(std::nan("")), "n/a");
    EXPECT_EQ(format_fixed(-0.04, 1), "0.0");
    EXPECT_EQ(format_fixed(-5597.03, 1), "-5597.0");
}

TEST(Format, Percentages) {
    EXPECT_EQ(format_percent(0.0), "<0.1%");
    EXPECT_EQ(format_percent(0.0004), "<0.1%");
    EXPECT_EQ(format_percent(0.01), "1.0%");
    EXPECT_EQ(format_percent(1.0), "100.0%");
    EXPECT_EQ(format_percent(1.0 / 5001.0), "<0.1%");
}

TEST(Golden, TestTableText) {
    const auto tests = sample_tests();
    const auto rows = render_test_table(tests);
    const std::string text = format_test_table(rows);
    const std::string header = text.substr(0, text.find('\n'));
    EXPECT_EQ(header.rfind("Market", 0), 0u);
    EXPECT_NE(header.find("LM Test statistic  p-value  Threshold estimates"), std::string::npos);
    expect_golden("test_table.txt", text);
}

TEST(Golden, TestTableJson) {
    const auto tests = sample_tests();
    const auto j = test_table_json(tests);
    for (const auto& r : j) {
        for (const char* key : {"market", "lm", "pvalue", "tau_hat", "replications", "seed"}) EXPECT_TRUE(r.contains(key));
        EXPECT_EQ(r.size(), 6u);
    }
    expect_golden("test_table.json", j.dump(2) + "\n");
}

TEST(Golden, FitTableText) {
    const auto rows = sample_fit_rows();
    const std::string text = format_fit_table(rows);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("Variable", 0), 0u);
    EXPECT_NE(line.find("Estimations in Regime 1"), std::string::npos);
    EXPECT_NE(line.find("Estimations in Regime 2"), std::string::npos);
    EXPECT_NE(text.find("z_t       -0.35 (0.17)"), std::string::npos);
    expect_golden("fit_table.txt", text);
}

TEST(Golden, FitTableJson) {
    const auto rows = sample_fit_rows();
    expect_golden("fit_table.json", fit_table_json(rows).dump(2) + "\n");
}
