#include "tcoint/pipeline.hpp"

#include <cmath>
#include <sstream>

#include "tcoint/errors.hpp"
#include "tcoint/report.hpp"
#include "tcoint/spec_io.hpp"

namespace tcoint {

namespace {

using nlohmann::json;

Deterministic parse_deterministic(const std::string& s) {
    if (s == "none") return Deterministic::None;
    if (s == "constant") return Deterministic::Constant;
    if (s == "constant+trend") return Deterministic::ConstantTrend;
    throw_invalid("unknown deterministic specification '" + s + "'");
}

EgDirection parse_direction(const std::string& s) {
    if (s == "target-on-benchmark") return EgDirection::TargetOnBenchmark;
    if (s == "benchmark-on-target") return EgDirection::BenchmarkOnTarget;
    throw_invalid("unknown regression direction '" + s + "'");
}

LagCriterion parse_criterion(const std::string& s) {
    if (s == "bic") return LagCriterion::Bic;
    if (s == "aic") return LagCriterion::Aic;
    throw_invalid("unknown information criterion '" + s + "'");
}

ErrorKind classify(const std::exception& e) {
    if (dynamic_cast<const DataError*>(&e)) return ErrorKind::Data;
    if (dynamic_cast<const NumericalError*>(&e)) return ErrorKind::Numerical;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return ErrorKind::Usage;
    return ErrorKind::Numerical;
}

struct Battery {
    json j;
    bool levelStationary = false;
    bool differenceStationary = false;
};

// A series counts as stationary when at least two of ADF, PP and DF-GLS
// reject a unit root at 5%.
Battery unit_root_battery(const Series& s, const PipelineConfig& cfg) {
    LagOptions lags;
    lags.criterion = cfg.criterion;
    DfglsOptions gls;
    gls.lags = lags;
    const Deterministic d = cfg.deterministic == Deterministic::None ? Deterministic::Constant : cfg.deterministic;
    auto run = [&](std::span<const double> y, bool& stationary) {
        const auto adf = adf_test(y, cfg.deterministic, lags);
        const auto pp = pp_test(y, cfg.deterministic);
        const auto dfgls = dfgls_test(y, d);
        const int votes = adf.rejects(Level::FivePercent) + pp.rejects(Level::FivePercent) +
                          dfgls.rejects(Level::FivePercent);
        stationary = votes >= 2;
        return json{{"adf", unit_root_json(adf)},
                    {"pp", unit_root_json(pp)},
                    {"dfgls", unit_root_json(dfgls)},
                    {"stationary_5pct", stationary}};
    };
    Battery b;
    const auto diffs = difference(s.values());
    json levels = run(s.values(), b.levelStationary);
    json differences = run(diffs, b.differenceStationary);
    b.j = {{"series", s.label()},
           {"levels", std::move(levels)},
           {"differences", std::move(differences)},
           {"integrated_order_one", !b.levelStationary && b.differenceStationary}};
    return b;
}

json coint_json(const CointVector& c) {
    return {{"beta", c.beta}, {"intercept", c.intercept}, {"beta_se", c.betaSe}, {"alpha", {1.0, -c.beta}}};
}

json engle_granger_json(const EngleGrangerResult& eg) {
    json dec;
    for (Level l : kLevels) dec[to_string(l)] = eg.cointegrated_at(l);
    return {{"coint", coint_json(eg.coint)},
            {"direction", to_string(eg.direction)},
            {"slope", eg.slope},
            {"slope_se", eg.slopeSe},
            {"slope_intercept", eg.slopeIntercept},
            {"residual_test", unit_root_json(eg.residualTest)},
            {"cointegrated", dec}};
}

Panel load_market(const PipelineConfig& cfg, const std::string& target) {
    Panel p = cfg.simulate ? simulate_tvecm(*cfg.simulate)
                           : load_panel(*cfg.input, cfg.benchmark, target, cfg.dateColumn);
    return cfg.logTransform ? log_transform(p) : p;
}

}  // namespace

void PipelineConfig::apply_fast_profile() {
    gridPoints = kFastGridPoints;
    replications = kFastReplications;
}

void PipelineConfig::validate() const {
    if (replications < 1) throw_invalid("replications >= 1 required");
    if (input.has_value() == simulate.has_value()) throw_invalid("exactly one of an input file or a simulation spec is required");
    if (input && (benchmark.empty() || targets.empty())) throw_invalid("benchmark and target columns are required");
    if (lags && *lags < 0) throw_invalid("lag order must be >= 0");
    if (!(fitThreshold >= 0.0 && fitThreshold <= 1.0)) throw_invalid("fit threshold must lie in [0, 1]");
    if (deterministic == Deterministic::None) throw_invalid("deterministic specification must be constant or constant+trend");
    if (workers < 1) throw_invalid("workers must be >= 1");
    grid().validate();
    if (simulate) simulate->validate();
}

GridConfig PipelineConfig::grid() const {
    GridConfig g;
    g.gridPoints = gridPoints;
    g.trim = trim;
    g.betaRadius = betaRadius;
    g.fixBeta = fixBeta;
    return g;
}

json PipelineConfig::to_json() const {
    json j{{"date_column", dateColumn},
           {"benchmark", benchmark},
           {"targets", targets},
           {"deterministic", tcoint::to_string(deterministic)},
           {"direction", tcoint::to_string(direction)},
           {"lags", lags ? json(*lags) : json("auto")},
           {"criterion", tcoint::to_string(criterion)},
           {"grid_points", gridPoints},
           {"trim", trim},
           {"beta_radius", betaRadius},
           {"fix_beta", fixBeta},
           {"joint_beta_test", jointBetaTest},
           {"replications", replications},
           {"seed", seed},
           {"scheme", tcoint::to_string(scheme)},
           {"log_transform", logTransform},
           {"fit_threshold", fitThreshold},
           {"force_fit", forceFit}};
    j["input"] = input ? json(*input) : json(nullptr);
    j["simulate"] = simulate ? dgp_to_json(*simulate) : json(nullptr);
    return j;
}

PipelineConfig PipelineConfig::from_json(const json& src) {
    const json& j = src.contains("config") ? src.at("config") : src;
    PipelineConfig c;
    try {
        if (j.contains("input") && !j.at("input").is_null()) c.input = j.at("input").get<std::string>();
        if (j.contains("simulate") && !j.at("simulate").is_null()) c.simulate = dgp_from_json(j.at("simulate"));
        c.dateColumn = j.value("date_column", c.dateColumn);
        c.benchmark = j.value("benchmark", c.benchmark);
        c.targets = j.value("targets", c.targets);
        if (j.contains("deterministic")) c.deterministic = parse_deterministic(j.at("deterministic"));
        if (j.contains("direction")) c.direction = parse_direction(j.at("direction"));
        if (j.contains("lags")) {
            const json& l = j.at("lags");
            if (l.is_string()) {
                if (l.get<std::string>() != "auto") throw_invalid("lags must be 'auto' or an integer");
            } else {
                c.lags = l.get<int>();
            }
        }
        if (j.contains("criterion")) c.criterion = parse_criterion(j.at("criterion"));
        c.gridPoints = j.value("grid_points", c.gridPoints);
        c.trim = j.value("trim", c.trim);
        c.betaRadius = j.value("beta_radius", c.betaRadius);
        c.fixBeta = j.value("fix_beta", c.fixBeta);
        c.jointBetaTest = j.value("joint_beta_test", c.jointBetaTest);
        c.replications = j.value("replications", c.replications);
        c.seed = j.value("seed", c.seed);
        if (j.contains("scheme")) c.scheme = parse_bootstrap_scheme(j.at("scheme"));
        c.logTransform = j.value("log_transform", c.logTransform);
        c.fitThreshold = j.value("fit_threshold", c.fitThreshold);
        c.forceFit = j.value("force_fit", c.forceFit);
    } catch (const json::exception& e) {
        throw_invalid(std::string("malformed configuration: ") + e.what());
    }
    return c;
}

PipelineReport run_pipeline(const PipelineConfig& cfg) {
    cfg.validate();
    json report{{"tool", "tcoint"}, {"config", cfg.to_json()}, {"markets", json::array()}, {"test_table", json::array()}};
    std::vector<std::string> targets = cfg.targets;
    if (cfg.simulate) targets = {cfg.simulate->targetLabel};

    const GridConfig grid = cfg.grid();
    std::vector<MarketTest> tests;
    for (const auto& target : targets) {
        json market{{"market", target}, {"stages", json::object()}};
        std::string stage = "load";
        auto fail = [&](const std::exception& e) {
            market["failed_stage"] = stage;
            market["error"] = e.what();
            report["markets"].push_back(market);
            report["test_table"] = test_table_json(tests);
            throw PipelineError(stage, classify(e), e.what(), report);
        };
        try {
            const Panel panel = load_market(cfg, target);
            market["benchmark"] = panel.benchmark().label();
            market["observations"] = panel.size();
            market["sample"] = {{"first", panel.timestamps().front().text}, {"last", panel.timestamps().back().text}};

            stage = "unit_root";
            const Battery bb = unit_root_battery(panel.benchmark(), cfg);
            const Battery bt = unit_root_battery(panel.target(), cfg);
            const bool i1 = bb.j["integrated_order_one"].get<bool>() && bt.j["integrated_order_one"].get<bool>();
            market["stages"]["unit_root"] = {{"benchmark", bb.j}, {"target", bt.j}, {"both_integrated_order_one", i1}};
            if (!i1) {
                market["stopped_after"] = "unit_root";
                market["note"] = "a series is not I(1); threshold cointegration analysis skipped";
                report["markets"].push_back(market);
                continue;
            }

            stage = "engle_granger";
            EngleGrangerOptions ego;
            ego.deterministic = cfg.deterministic;
            ego.direction = cfg.direction;
            ego.lags.criterion = cfg.criterion;
            const EngleGrangerResult eg = engle_granger(panel, ego);
            market["stages"]["engle_granger"] = engle_granger_json(eg);

            stage = "lag_selection";
            const int maxQ = auto_max_lag(static_cast<int>(panel.size()));
            const int q = cfg.lags ? *cfg.lags : select_lag(panel, eg.coint, maxQ, cfg.criterion);
            market["stages"]["lag_selection"] = {{"q", q},
                                                 {"mode", cfg.lags ? "fixed" : "auto"},
                                                 {"max_lag", cfg.lags ? json(nullptr) : json(maxQ)},
                                                 {"criterion", to_string(cfg.criterion)}};

            stage = "threshold_test";
            BootstrapOptions bo;
            bo.replications = cfg.replications;
            bo.seed = cfg.seed;
            bo.scheme = cfg.scheme;
            bo.workers = cfg.workers;
            bo.jointBeta = cfg.jointBetaTest;
            bo.eg = ego;
            const SupLmResult test = bootstrap_pvalue(panel, q, grid, bo);
            const bool reject = test.pValue <= cfg.fitThreshold;
            tests.push_back({target, test});
            market["stages"]["threshold_test"] = {{"lm", test.statistic},
                                                  {"pvalue", test.pValue},
                                                  {"tau_hat", test.tauHat},
                                                  {"tau_index", test.tauIndex},
                                                  {"beta_null", test.betaNull},
                                                  {"replications", test.replications},
                                                  {"failed_replications", test.failedReplications},
                                                  {"seed", test.seed},
                                                  {"scheme", to_string(test.scheme)},
                                                  {"reject_no_threshold", reject}};

            stage = "tvecm";
            if (!reject && !cfg.forceFit) {
                market["stopped_after"] = "threshold_test";
                market["note"] = "no threshold effect at the configured level; linear adjustment retained";
                report["markets"].push_back(market);
                continue;
            }
            const TvecmFit fit = grid_search_tvecm(panel, q, eg.coint, grid, cfg.workers);
            const auto rows = render_fit_table(fit);
            market["stages"]["tvecm"] = {{"forced", !reject},
                                         {"tau", fit.tau},
                                         {"beta", fit.beta},
                                         {"tau_index", fit.tauIndex},
                                         {"beta_index", fit.betaIndex},
                                         {"regime_counts", fit.regimeCounts},
                                         {"log_lik", fit.logLik},
                                         {"t_eff", fit.tEff},
                                         {"table", fit_table_json(rows)}};
            market["stopped_after"] = "tvecm";
            report["markets"].push_back(market);
        } catch (const PipelineError&) {
            throw;
        } catch (const std::exception& e) {
            fail(e);
        }
    }
    report["test_table"] = test_table_json(tests);
    return PipelineReport{std::move(report)};
}

std::string PipelineReport::text() const { return render_report_text(json); }

std::string PipelineReport::render(OutputFormat f) const {
    return f == OutputFormat::Json ? json.dump(2) + "\n" : text();
}

std::string render_report_text(const nlohmann::json& report) {
    std::ostringstream out;
    const json& cfg = report.at("config");
    out << "Threshold cointegration analysis\n";
    out << "  grid points " << cfg.value("grid_points", 0) << ", trim " << format_fixed(cfg.value("trim", 0.0), 2)
        << ", replications " << cfg.value("replications", 0) << ", seed " << cfg.value("seed", 0ULL)
        << ", lags " << cfg.at("lags").dump() << " (" << cfg.value("criterion", "") << ")\n\n";

    for (const auto& m : report.at("markets")) {
        const auto& st = m.at("stages");
        out << "== " << m.value("market", "") << " vs " << m.value("benchmark", "?") << " ("
            << m.value("observations", 0) << " obs)\n";
        if (st.contains("unit_root")) {
            out << "Stage 1: unit roots (5%: stationary when 2 of ADF/PP/DF-GLS reject)\n";
            for (const char* who : {"benchmark", "target"}) {
                const auto& s = st.at("unit_root").at(who);
                out << "  " << s.value("series", "") << ": ";
                for (const char* part : {"levels", "differences"}) {
                    const auto& p = s.at(part);
                    out << part << " ADF " << format_fixed(p.at("adf").at("statistic").get<double>(), 2) << " PP "
                        << format_fixed(p.at("pp").at("statistic").get<double>(), 2) << " DF-GLS "
                        << format_fixed(p.at("dfgls").at("statistic").get<double>(), 2)
                        << (p.at("stationary_5pct").get<bool>() ? " [stationary]" : " [unit root]") << "; ";
                }
                out << (s.at("integrated_order_one").get<bool>() ? "I(1)" : "not I(1)") << '\n';
            }
        }
        if (st.contains("engle_granger")) {
            const auto& eg = st.at("engle_granger");
            out << "Stage 2: Engle-Granger  beta " << format_fixed(eg.at("coint").at("beta").get<double>(), 4)
                << "  ADF on residuals " << format_fixed(eg.at("residual_test").at("statistic").get<double>(), 2)
                << "  cointegrated at 5%: " << (eg.at("cointegrated").at("5%").get<bool>() ? "yes" : "no") << '\n';
        }
        if (st.contains("lag_selection")) {
            out << "Lag order q = " << st.at("lag_selection").at("q").get<int>() << " ("
                << st.at("lag_selection").at("mode").get<std::string>() << ")\n";
        }
        if (st.contains("threshold_test")) {
            const auto& t = st.at("threshold_test");
            out << "Stage 3: Sup-LM " << format_fixed(t.at("lm").get<double>(), 2) << "  p-value "
                << format_percent(t.at("pvalue").get<double>()) << "  tau-hat "
                << format_fixed(t.at("tau_hat").get<double>(), 1)
                << (t.at("reject_no_threshold").get<bool>() ? "  [threshold effect]" : "  [not rejected]") << '\n';
        }
        if (st.contains("tvecm")) {
            const auto& f = st.at("tvecm");
            out << "Stage 4: threshold VECM  tau " << format_fixed(f.at("tau").get<double>(), 2) << "  beta "
                << format_fixed(f.at("beta").get<double>(), 4) << "  regimes " << f.at("regime_counts")[0].get<int>()
                << " / " << f.at("regime_counts")[1].get<int>() << '\n';
            std::vector<FitTableRow> rows;
            for (const auto& r : f.at("table")) {
                auto num = [](const json& v) {
                    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
                };
                rows.push_back({r.at("equation").get<int>(), r.at("variable").get<std::string>(),
                                {num(r.at("regime1").at("est")), num(r.at("regime1").at("se"))},
                                {num(r.at("regime2").at("est")), num(r.at("regime2").at("se"))}});
            }
            out << format_fit_table(rows);
        }
        if (m.contains("note")) out << "Note: " << m.at("note").get<std::string>() << '\n';
        if (m.contains("error")) {
            out << "Failed at stage " << m.at("failed_stage").get<std::string>() << ": "
                << m.at("error").get<std::string>() << '\n';
        }
        out << '\n';
    }
    const auto& tt = report.at("test_table");
    if (!tt.empty()) {
        std::vector<TestTableRow> rows;
        for (const auto& r : tt) {
            rows.push_back({r.at("market").get<std::string>(), format_fixed(r.at("lm").get<double>(), 2),
                            format_percent(r.at("pvalue").get<double>()), format_fixed(r.at("tau_hat").get<double>(), 1)});
        }
        out << "Threshold cointegration tests\n" << format_test_table(rows);
    }
    return out.str();
}

}  // namespace tcoint
