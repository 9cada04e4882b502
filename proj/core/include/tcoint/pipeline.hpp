#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcoint/linctr.hpp"
#include "tcoint/simulate.hpp"
#include "tcoint/suplm.hpp"
#include "tcoint/tvecm.hpp"
#include "tcoint/unitroot.hpp"

namespace tcoint {

enum class OutputFormat { Text, Json };

/// Full parameter surface of an analysis run. Defaults follow the
/// reference protocol: 300 grid points, 5000 bootstrap replications, lag
/// order chosen by BIC up to Schwert's bound.
struct PipelineConfig {
    std::optional<std::string> input;    ///< CSV path
    std::optional<DgpSpec> simulate;     ///< alternative to `input`
    std::string dateColumn = "date";
    std::string benchmark;
    std::vector<std::string> targets;
    Deterministic deterministic = Deterministic::Constant;
    EgDirection direction = EgDirection::TargetOnBenchmark;
    std::optional<int> lags;             ///< nullopt = automatic selection
    LagCriterion criterion = LagCriterion::Bic;
    int gridPoints = 300;
    double trim = 0.05;
    double betaRadius = 6.0;
    bool fixBeta = false;
    bool jointBetaTest = false;
    int replications = 5000;
    std::uint64_t seed = 1;
    BootstrapScheme scheme = BootstrapScheme::ParametricGaussian;
    bool logTransform = false;
    double fitThreshold = 0.10;
    bool forceFit = false;
    OutputFormat format = OutputFormat::Text;
    int workers = 1;  ///< execution only; results do not depend on it

    static constexpr int kFastGridPoints = 50;
    static constexpr int kFastReplications = 200;

    void apply_fast_profile();
    void validate() const;
    [[nodiscard]] GridConfig grid() const;
    [[nodiscard]] nlohmann::json to_json() const;
    static PipelineConfig from_json(const nlohmann::json& j);
};

enum class ErrorKind { Usage = 1, Data = 2, Numerical = 3 };

/// A stage failed. `partial` holds the report up to the failing stage.
class PipelineError : public std::runtime_error {
public:
    PipelineError(std::string stage, ErrorKind kind, const std::string& what, nlohmann::json partial)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)), kind_(kind), partial_(std::move(partial)) {}

    [[nodiscard]] const std::string& stage() const { return stage_; }
    [[nodiscard]] ErrorKind kind() const { return kind_; }
    [[nodiscard]] const nlohmann::json& partial() const { return partial_; }

private:
    std::string stage_;
    ErrorKind kind_;
    nlohmann::json partial_;
};

struct PipelineReport {
    nlohmann::json json;

    [[nodiscard]] std::string text() const;
    [[nodiscard]] std::string render(OutputFormat f) const;
};

/// Unit roots on levels and differences, Engle-Granger, lag selection,
/// Sup-LM bootstrap test, then the threshold VECM when the test's p-value
/// is at most fitThreshold (or forceFit). A pair with a level-stationary
/// series stops after the unit-root stage.
PipelineReport run_pipeline(const PipelineConfig& cfg);

/// Text rendering of a report JSON (also used for partial reports).
std::string render_report_text(const nlohmann::json& report);

}  // namespace tcoint
