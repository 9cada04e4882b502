#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "fixtures.hpp"
#include "tcoint/pipeline.hpp"
#include "tcoint/simulate.hpp"
#include "tcoint/spec_io.hpp"

using namespace tcoint;
namespace fs = std::filesystem;

namespace {

const fs::path kData = TCOINT_DATA_DIR;

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "tcoint_pipeline_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + TCOINT_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

PipelineConfig fast_config(const std::string& csv, const std::string& target) {
    PipelineConfig c;
    c.input = (kData / csv).string();
    c.benchmark = "US";
    c.targets = {target};
    c.apply_fast_profile();
    return c;
}

}  // namespace

TEST(PipelineConfig, ProtocolDefaults) {
    const PipelineConfig c;
    EXPECT_EQ(c.gridPoints, 300);
    EXPECT_EQ(c.replications, 5000);
    EXPECT_FALSE(c.lags.has_value());
    EXPECT_EQ(c.criterion, LagCriterion::Bic);
    EXPECT_EQ(c.trim, 0.05);
    EXPECT_EQ(c.fitThreshold, 0.10);
    EXPECT_EQ(c.deterministic, Deterministic::Constant);
    EXPECT_FALSE(c.logTransform);
    EXPECT_FALSE(c.jointBetaTest);
    PipelineConfig f;
    f.apply_fast_profile();
    EXPECT_EQ(f.gridPoints, 50);
    EXPECT_EQ(f.replications, 200);
}

TEST(PipelineConfig, ZeroReplicationsRejectedBeforeWork) {
    PipelineConfig c;
    c.input = "/nonexistent/file.csv";
    c.benchmark = "US";
    c.targets = {"Mex"};
    c.replications = 0;
    try {
        run_pipeline(c);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_STREQ(e.what(), "replications >= 1 required");
    }
}

TEST(PipelineConfig, JsonRoundTrip) {
    PipelineConfig c = fast_config("mexico_like.csv", "Mex");
    c.lags = 2;
    c.seed = 99;
    c.scheme = BootstrapScheme::ResidualResample;
    c.deterministic = Deterministic::ConstantTrend;
    const PipelineConfig back = PipelineConfig::from_json(c.to_json());
    EXPECT_EQ(back.to_json(), c.to_json());
    EXPECT_THROW(PipelineConfig::from_json(nlohmann::json{{"lags", "sometimes"}}), std::invalid_argument);
}

TEST(Pipeline, ThresholdDatasetReachesFitStage) {
    PipelineConfig c = fast_config("mexico_like.csv", "Mex");
    c.lags = 1;
    const auto report = run_pipeline(c);
    const auto& m = report.json.at("markets").at(0);
    EXPECT_EQ(m.at("stopped_after"), "tvecm");
    EXPECT_TRUE(m.at("stages").at("unit_root").at("both_integrated_order_one").get<bool>());
    EXPECT_LE(m.at("stages").at("threshold_test").at("pvalue").get<double>(), 0.10);
    const auto& table = m.at("stages").at("tvecm").at("table");
    ASSERT_EQ(table.size(), 8u);
    const std::vector<std::string> labels{"z_t", "Constant", "dUS(-1)", "dMex(-1)"};
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(table[i].at("variable"), labels[i % 4]);
    ASSERT_EQ(report.json.at("test_table").size(), 1u);
    const std::string text = report.text();
    EXPECT_NE(text.find("LM Test statistic  p-value  Threshold estimates"), std::string::npos);
    EXPECT_NE(text.find("Estimations in Regime 1"), std::string::npos);
    EXPECT_NE(text.find("dMex(-1)"), std::string::npos);
}

TEST(Pipeline, LinearDatasetStopsAfterTest) {
    const auto report = run_pipeline(fast_config("linear_like.csv", "Bra"));
    const auto& m = report.json.at("markets").at(0);
    EXPECT_EQ(m.at("stopped_after"), "threshold_test");
    EXPECT_FALSE(m.at("stages").contains("tvecm"));
    EXPECT_GT(m.at("stages").at("threshold_test").at("pvalue").get<double>(), 0.10);
    EXPECT_FALSE(m.at("stages").at("threshold_test").at("reject_no_threshold").get<bool>());
    EXPECT_TRUE(m.contains("note"));
    EXPECT_EQ(report.json.at("test_table").size(), 1u);
}

TEST(Pipeline, ForceFitRunsFitStage) {
    PipelineConfig c = fast_config("linear_like.csv", "Bra");
    c.forceFit = true;
    c.replications = 20;
    const auto report = run_pipeline(c);
    const auto& m = report.json.at("markets").at(0);
    EXPECT_EQ(m.at("stopped_after"), "tvecm");
    EXPECT_TRUE(m.at("stages").at("tvecm").at("forced").get<bool>());
}

TEST(Pipeline, StationarySeriesStopsAtUnitRoots) {
    const auto b = fixtures::random_walk(248, 1);
    const auto g = fixtures::ar1(248, 0.3, 2);
    Eigen::MatrixXd L(248, 2);
    for (int t = 0; t < 248; ++t) L.row(t) << b[t], g[t];
    const fs::path csv = scratch("stationary.csv");
    save_panel(panel_from_levels(L, "1985-01", "US", "Arg"), csv);
    PipelineConfig c;
    c.input = csv.string();
    c.benchmark = "US";
    c.targets = {"Arg"};
    c.forceFit = true;
    const auto report = run_pipeline(c);
    const auto& m = report.json.at("markets").at(0);
    EXPECT_EQ(m.at("stopped_after"), "unit_root");
    EXPECT_FALSE(m.at("stages").contains("engle_granger"));
    EXPECT_FALSE(m.at("stages").contains("tvecm"));
}

TEST(Pipeline, StageErrorCarriesPartialReport) {
    const auto b = fixtures::random_walk(200, 3);
    Eigen::MatrixXd L(200, 2);
    for (int t = 0; t < 200; ++t) L.row(t) << b[t], b[t];
    const fs::path csv = scratch("identical.csv");
    save_panel(panel_from_levels(L, "1985-01", "US", "Col"), csv);
    PipelineConfig c;
    c.input = csv.string();
    c.benchmark = "US";
    c.targets = {"Col"};
    c.apply_fast_profile();
    try {
        run_pipeline(c);
        FAIL();
    } catch (const PipelineError& e) {
        EXPECT_EQ(e.stage(), "engle_granger");
        EXPECT_EQ(e.kind(), ErrorKind::Numerical);
        const auto& m = e.partial().at("markets").at(0);
        EXPECT_TRUE(m.at("stages").contains("unit_root"));
        EXPECT_EQ(m.at("failed_stage"), "engle_granger");
        EXPECT_NE(render_report_text(e.partial()).find("Failed at stage engle_granger"), std::string::npos);
    }
}

TEST(Pipeline, MissingInputIsDataError) {
    PipelineConfig c = fast_config("does_not_exist.csv", "Mex");
    try {
        run_pipeline(c);
        FAIL();
    } catch (const PipelineError& e) {
        EXPECT_EQ(e.stage(), "load");
        EXPECT_EQ(e.kind(), ErrorKind::Data);
    }
}

TEST(Pipeline, EmbeddedConfigReproducesReport) {
    PipelineConfig c = fast_config("mexico_like.csv", "Mex");
    c.replications = 40;
    const auto first = run_pipeline(c);
    const auto again = run_pipeline(PipelineConfig::from_json(first.json));
    EXPECT_EQ(first.json.dump(2), again.json.dump(2));
}

TEST(Pipeline, WorkerCountLeavesReportUnchanged) {
    PipelineConfig c = fast_config("mexico_like.csv", "Mex");
    c.replications = 40;
    const std::string a = run_pipeline(c).render(OutputFormat::Json);
    c.workers = 3;
    EXPECT_EQ(run_pipeline(c).render(OutputFormat::Json), a);
}

TEST(Pipeline, SimulatedInputRecordsSpec) {
    PipelineConfig c;
    c.simulate = fixtures::threshold_spec(248, 5);
    c.apply_fast_profile();
    c.replications = 20;
    const auto report = run_pipeline(c);
    EXPECT_EQ(report.json.at("config").at("simulate"), dgp_to_json(*c.simulate));
    const auto& m = report.json.at("markets").at(0);
    EXPECT_EQ(m.at("sample").at("first"), "1985-01");
    EXPECT_EQ(m.at("sample").at("last"), "2005-08");
}

TEST(SpecIo, DgpJsonRoundTrip) {
    const DgpSpec s = fixtures::threshold_spec(123, 77);
    const DgpSpec back = dgp_from_json(dgp_to_json(s));
    EXPECT_EQ(dgp_to_json(back), dgp_to_json(s));
    EXPECT_EQ(back.A1, s.A1);
    EXPECT_EQ(back.noiseCov, s.noiseCov);
    const DgpSpec bundled = load_dgp(kData / "mexico_like.json");
    EXPECT_EQ(bundled.T, 248);
    EXPECT_EQ(bundled.start, "1985-01");
}

TEST(Cli, SimulateRoundTripAndDeterminism) {
    const fs::path a = scratch("sim_a.csv"), b = scratch("sim_b.csv");
    const std::string spec = (kData / "mexico_like.json").string();
    ASSERT_EQ(run_cli("simulate --spec " + spec + " --out " + a.string() + " --seed 7"), 0);
    ASSERT_EQ(run_cli("simulate --spec " + spec + " --out " + b.string() + " --seed 7"), 0);
    EXPECT_EQ(slurp(a), slurp(b));
    DgpSpec s = load_dgp(spec);
    s.seed = 7;
    const Panel mem = simulate_tvecm(s);
    const Panel disk = load_panel(a, "US", "Mex");
    EXPECT_EQ(disk, mem);
    EXPECT_EQ(disk.size(), 248u);
    EXPECT_EQ(disk.timestamps().front().text, "1985-01");
    EXPECT_EQ(disk.timestamps().back().text, "2005-08");
}

TEST(Cli, BundledCsvMatchesItsSpec) {
    for (const auto& [stem, target] : {std::pair{"mexico_like", "Mex"}, std::pair{"linear_like", "Bra"}}) {
        const Panel mem = simulate_tvecm(load_dgp(kData / (std::string(stem) + ".json")));
        EXPECT_EQ(load_panel(kData / (std::string(stem) + ".csv"), "US", target), mem) << stem;
    }
}

TEST(Cli, ExitCodes) {
    const std::string csv = (kData / "mexico_like.csv").string();
    EXPECT_EQ(run_cli("--bogus"), 1);
    EXPECT_EQ(run_cli("analyze --input " + csv + " --benchmark US --target Mex --replications 0"), 1);
    EXPECT_EQ(run_cli("analyze --input " + csv + " --benchmark US --target Mex --lags often"), 1);
    EXPECT_EQ(run_cli("analyze --input /nonexistent.csv --benchmark US --target Mex --fast"), 2);
    EXPECT_EQ(run_cli("analyze --input " + csv + " --benchmark US --target Nope --fast"), 2);
    EXPECT_EQ(run_cli("simulate --spec /nonexistent.json --out " + scratch("x.csv").string()), 2);
}

TEST(Cli, JsonReportByteIdenticalAcrossWorkers) {
    const std::string csv = (kData / "mexico_like.csv").string();
    const fs::path a = scratch("rep_a.json"), b = scratch("rep_b.json"), c = scratch("rep_c.json");
    const std::string base = "analyze --input " + csv + " --benchmark US --target Mex --fast --replications 30 --format json";
    ASSERT_EQ(run_cli(base + " --output " + a.string()), 0);
    ASSERT_EQ(run_cli(base + " --workers 3 --output " + b.string()), 0);
    ASSERT_EQ(run_cli("analyze --config " + a.string() + " --format json --output " + c.string()), 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a), slurp(c));
    EXPECT_FALSE(slurp(a).empty());
}
