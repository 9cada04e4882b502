#include "tcoint/spec_io.hpp"

#include <fstream>

#include "tcoint/errors.hpp"

namespace tcoint {

namespace {

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from(const nlohmann::json& j, const char* name) {
    if (!j.is_array() || j.empty() || !j.front().is_array()) {
        throw DataError(std::string("DGP field '") + name + "' must be a non-empty array of rows");
    }
    const std::size_t cols = j.front().size();
    Eigen::MatrixXd m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != cols) {
            throw DataError(std::string("DGP field '") + name + "' has ragged rows");
        }
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

}  // namespace

nlohmann::json dgp_to_json(const DgpSpec& s) {
    return {{"beta", s.beta},
            {"tau", s.tau},
            {"A1", matrix_json(s.A1)},
            {"A2", matrix_json(s.A2)},
            {"noise_cov", matrix_json(s.noiseCov)},
            {"T", s.T},
            {"burn_in", s.burnIn},
            {"seed", s.seed},
            {"start", s.start},
            {"benchmark_label", s.benchmarkLabel},
            {"target_label", s.targetLabel}};
}

DgpSpec dgp_from_json(const nlohmann::json& j) {
    try {
        DgpSpec s;
        s.beta = j.value("beta", s.beta);
        s.tau = j.value("tau", s.tau);
        s.A1 = matrix_from(j.at("A1"), "A1");
        s.A2 = j.contains("A2") ? matrix_from(j.at("A2"), "A2") : s.A1;
        if (j.contains("noise_cov")) {
            const Eigen::MatrixXd c = matrix_from(j.at("noise_cov"), "noise_cov");
            if (c.rows() != 2 || c.cols() != 2) throw DataError("DGP field 'noise_cov' must be 2 x 2");
            s.noiseCov = c;
        }
        s.T = j.value("T", s.T);
        s.burnIn = j.value("burn_in", s.burnIn);
        s.seed = j.value("seed", s.seed);
        s.start = j.value("start", s.start);
        s.benchmarkLabel = j.value("benchmark_label", s.benchmarkLabel);
        s.targetLabel = j.value("target_label", s.targetLabel);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed DGP specification: ") + e.what());
    }
}

DgpSpec load_dgp(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    try {
        return dgp_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

nlohmann::json unit_root_json(const UnitRootResult& r) {
    nlohmann::json cv, rej;
    for (Level l : kLevels) {
        cv[to_string(l)] = r.criticalValues.at(l);
        rej[to_string(l)] = r.rejects(l);
    }
    nlohmann::json j{{"statistic", r.statistic},
                     {"lags", r.lagUsed},
                     {"deterministic", to_string(r.deterministic)},
                     {"nobs", r.nobs},
                     {"critical_values", cv},
                     {"reject", rej}};
    if (r.longRunVariance) j["long_run_variance"] = *r.longRunVariance;
    return j;
}

}  // namespace tcoint
