// tcoint: threshold cointegration analysis of bivariate price systems.
//
//   tcoint analyze --input FILE --benchmark COL --target COL [options]
//   tcoint simulate --spec FILE --out FILE [--seed N]
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcoint/errors.hpp"
#include "tcoint/pipeline.hpp"
#include "tcoint/simulate.hpp"
#include "tcoint/spec_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kNumerical = 3;

void emit(const std::string& text, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw tcoint::DataError("cannot write '" + outPath + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Threshold cointegration analysis: unit roots, Engle-Granger, Sup-LM test, threshold VECM"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "Run the four-stage analysis on a CSV panel");
    std::string input, benchmark, dateColumn = "date", lags = "auto", format = "text", output, configPath;
    std::string specPath, scheme = "parametric-gaussian", direction = "target-on-benchmark", criterion = "bic";
    std::vector<std::string> targets;
    int gridPoints = 300, replications = 5000, workers = 1;
    double trim = 0.05, betaRadius = 6.0, fitThreshold = 0.10;
    std::uint64_t seed = 1;
    bool logTransform = false, fast = false, forceFit = false, trend = false, fixBeta = false, jointTest = false;

    analyze->add_option("--input", input, "CSV file with a date column and numeric columns");
    analyze->add_option("--spec", specPath, "Analyze a simulated panel from this DGP file instead of --input");
    analyze->add_option("--config", configPath, "Re-run the configuration embedded in a JSON report");
    analyze->add_option("--benchmark", benchmark, "Benchmark column (first series)");
    analyze->add_option("--target", targets, "Target column; repeat for several markets");
    analyze->add_option("--date-column", dateColumn, "Name of the date column");
    analyze->add_option("--lags", lags, "VECM lag order q, or 'auto' (BIC up to Schwert's bound)");
    analyze->add_option("--ic", criterion, "Lag selection criterion")->check(CLI::IsMember({"bic", "aic"}));
    auto* gridOpt = analyze->add_option("--grid-points", gridPoints, "Grid points per searched dimension");
    analyze->add_option("--trim", trim, "Minimum fraction of observations per regime");
    analyze->add_option("--beta-radius", betaRadius, "Half-width of the beta grid in standard errors");
    analyze->add_flag("--fix-beta", fixBeta, "Hold beta at the Engle-Granger estimate in the TVECM fit");
    analyze->add_flag("--joint-test", jointTest, "Search beta as well as tau inside the Sup-LM statistic");
    auto* repOpt = analyze->add_option("--replications", replications, "Bootstrap replications");
    analyze->add_option("--seed", seed, "Master RNG seed");
    analyze->add_option("--scheme", scheme, "Bootstrap innovations")
        ->check(CLI::IsMember({"parametric-gaussian", "residual-resample"}));
    analyze->add_option("--direction", direction, "Engle-Granger step-1 regression direction")
        ->check(CLI::IsMember({"target-on-benchmark", "benchmark-on-target"}));
    analyze->add_flag("--trend", trend, "Include a linear trend in unit-root and cointegrating regressions");
    analyze->add_flag("--log", logTransform, "Take natural logs of both series first");
    analyze->add_flag("--fast", fast, "Desk-scale profile: 50 grid points, 200 replications");
    analyze->add_flag("--force-fit", forceFit, "Fit the threshold VECM even without a threshold effect");
    analyze->add_option("--fit-threshold", fitThreshold, "p-value at or below which the threshold VECM is fitted");
    analyze->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--output", output, "Write the report here instead of stdout");
    analyze->add_option("--workers", workers, "Worker threads (results do not depend on this)");

    auto* simulate = app.add_subcommand("simulate", "Write a simulated threshold VECM panel as CSV");
    std::string simSpec, simOut;
    std::uint64_t simSeed = 0;
    int simT = 0;
    simulate->add_option("--spec", simSpec, "DGP file (JSON)")->required();
    simulate->add_option("--out", simOut, "Output CSV path")->required();
    auto* simSeedOpt = simulate->add_option("--seed", simSeed, "Override the DGP seed");
    auto* simTOpt = simulate->add_option("--T", simT, "Override the sample length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*simulate) {
            tcoint::DgpSpec spec = tcoint::load_dgp(simSpec);
            if (*simSeedOpt) spec.seed = simSeed;
            if (*simTOpt) spec.T = simT;
            tcoint::save_panel(tcoint::simulate_tvecm(spec), simOut);
            return kOk;
        }

        tcoint::PipelineConfig cfg;
        if (!configPath.empty()) {
            std::ifstream in(configPath);
            if (!in) throw tcoint::DataError("cannot open '" + configPath + "'");
            cfg = tcoint::PipelineConfig::from_json(nlohmann::json::parse(in));
        } else {
            if (!specPath.empty()) {
                cfg.simulate = tcoint::load_dgp(specPath);
            } else if (!input.empty()) {
                cfg.input = input;
            }
            cfg.benchmark = benchmark;
            cfg.targets = targets;
            cfg.dateColumn = dateColumn;
            if (lags != "auto") {
                try {
                    std::size_t used = 0;
                    cfg.lags = std::stoi(lags, &used);
                    if (used != lags.size()) throw std::invalid_argument(lags);
                } catch (const std::exception&) {
                    throw std::invalid_argument("--lags must be 'auto' or a non-negative integer");
                }
            }
            cfg.criterion = criterion == "aic" ? tcoint::LagCriterion::Aic : tcoint::LagCriterion::Bic;
            if (fast) cfg.apply_fast_profile();
            if (!fast || *gridOpt) cfg.gridPoints = gridPoints;
            if (!fast || *repOpt) cfg.replications = replications;
            cfg.trim = trim;
            cfg.betaRadius = betaRadius;
            cfg.fixBeta = fixBeta;
            cfg.jointBetaTest = jointTest;
            cfg.seed = seed;
            cfg.scheme = tcoint::parse_bootstrap_scheme(scheme);
            cfg.direction = direction == "benchmark-on-target" ? tcoint::EgDirection::BenchmarkOnTarget
                                                               : tcoint::EgDirection::TargetOnBenchmark;
            cfg.deterministic = trend ? tcoint::Deterministic::ConstantTrend : tcoint::Deterministic::Constant;
            cfg.logTransform = logTransform;
            cfg.forceFit = forceFit;
            cfg.fitThreshold = fitThreshold;
        }
        cfg.format = format == "json" ? tcoint::OutputFormat::Json : tcoint::OutputFormat::Text;
        cfg.workers = workers;

        try {
            const tcoint::PipelineReport report = tcoint::run_pipeline(cfg);
            emit(report.render(cfg.format), output);
            return kOk;
        } catch (const tcoint::PipelineError& e) {
            const std::string partial = cfg.format == tcoint::OutputFormat::Json
                                            ? e.partial().dump(2) + "\n"
                                            : tcoint::render_report_text(e.partial());
            emit(partial, output);
            std::cerr << "error: " << e.what() << '\n';
            return static_cast<int>(e.kind());
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const tcoint::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const tcoint::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    }
}
