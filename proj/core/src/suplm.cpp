#include "tcoint/suplm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "tcoint/errors.hpp"
#include "tcoint/ols.hpp"
#include "tcoint/report.hpp"
#include "tcoint/rng.hpp"
#include "tcoint/simulate.hpp"

namespace tcoint {

namespace {

constexpr double kTieTolerance = 1e-12;

struct RegimeFit {
    Eigen::VectorXd coef;  // vec(A_r), equation-major
    Eigen::MatrixXd cov;
};

std::optional<RegimeFit> regime_fit(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                    std::span<const int> indicator, int regime, int count) {
    const Eigen::Index k = X.cols();
    if (count < k) return std::nullopt;
    Eigen::MatrixXd Xr(count, k), Yr(count, Y.cols());
    for (Eigen::Index i = 0, j = 0; i < X.rows(); ++i) {
        if (indicator[i] != regime) continue;
        Xr.row(j) = X.row(i);
        Yr.row(j) = Y.row(i);
        ++j;
    }
    auto ols = try_least_squares(Xr, Yr);
    if (!ols) return std::nullopt;
    RegimeFit f;
    f.coef = Eigen::Map<const Eigen::VectorXd>(ols->coef.data(), ols->coef.size());
    f.cov = hc0_covariance_vec(Xr, ols->xtxInv, ols->residuals);
    return f;
}

}  // namespace

std::optional<double> lm_statistic_split(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                         std::span<const int> indicator, double trim) {
    if (static_cast<Eigen::Index>(indicator.size()) != X.rows() || Y.rows() != X.rows()) {
        throw_invalid("regressors, responses and indicator must have equal length");
    }
    int n1 = 0;
    for (int v : indicator) n1 += v == 1;
    const int n2 = static_cast<int>(indicator.size()) - n1;
    const double minCount = trim * static_cast<double>(indicator.size());
    if (n1 < minCount || n2 < minCount) return std::nullopt;
    const auto f1 = regime_fit(X, Y, indicator, 1, n1);
    if (!f1) return std::nullopt;
    const auto f2 = regime_fit(X, Y, indicator, 2, n2);
    if (!f2) return std::nullopt;
    const Eigen::VectorXd d = f1->coef - f2->coef;
    const Eigen::MatrixXd V = f1->cov + f2->cov;
    Eigen::LLT<Eigen::MatrixXd> llt(V);
    if (llt.info() != Eigen::Success) return std::nullopt;
    const Eigen::VectorXd w = llt.solve(d);
    if (!w.allFinite()) return std::nullopt;
    return std::max(0.0, d.dot(w));
}

std::optional<double> lm_statistic_at(const Panel& panel, int q, const CointVector& betaNull, double tau,
                                      double trim) {
    const RegressorSet reg = build_regressors(panel, q, betaNull.beta);
    const auto ind = classify_regimes(std::span<const double>(reg.zLag.data(), reg.rows()), tau);
    return lm_statistic_split(reg.X, reg.Y, ind, trim);
}

namespace {

// Updates `best` with the sup over taus at one beta.
void sup_at_beta(const Panel& panel, int q, double beta, int betaIndex, std::span<const double> taus, double trim,
                 SupLmStatistic& best, bool& found) {
    const RegressorSet reg = build_regressors(panel, q, beta);
    const std::span<const double> z(reg.zLag.data(), reg.rows());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        ++best.evaluated;
        const auto ind = classify_regimes(z, taus[i]);
        const auto lm = lm_statistic_split(reg.X, reg.Y, ind, trim);
        if (!lm) continue;
        ++best.feasible;
        bool take = !found;
        if (found) {
            if (*lm > best.statistic + kTieTolerance) {
                take = true;
            } else if (*lm >= best.statistic - kTieTolerance) {
                take = taus[i] < best.tauHat || (taus[i] == best.tauHat && beta < best.beta);
            }
        }
        if (take) {
            found = true;
            best.statistic = *lm;
            best.tauHat = taus[i];
            best.beta = beta;
            best.tauIndex = static_cast<int>(i);
            best.betaIndex = betaIndex;
            best.tauGrid.assign(taus.begin(), taus.end());
        }
    }
}

}  // namespace

SupLmStatistic suplm_over(const Panel& panel, int q, double beta, std::span<const double> taus, double trim) {
    if (taus.empty()) throw_invalid("no tau candidates");
    SupLmStatistic best;
    bool found = false;
    sup_at_beta(panel, q, beta, 0, taus, trim, best, found);
    if (!found) throw DataError("trim infeasible for all candidates");
    return best;
}

SupLmStatistic suplm_statistic(const Panel& panel, int q, const CointVector& betaNull, const GridConfig& cfg,
                               bool jointBeta) {
    cfg.validate();
    GridConfig bcfg = cfg;
    bcfg.fixBeta = !jointBeta;
    const auto betas = beta_grid(betaNull, bcfg);
    SupLmStatistic best;
    bool found = false;
    for (std::size_t b = 0; b < betas.size(); ++b) {
        const RegressorSet reg = build_regressors(panel, q, betas[b]);
        const auto taus = tau_grid(std::span<const double>(reg.zLag.data(), reg.rows()), cfg.gridPoints, cfg.trim);
        sup_at_beta(panel, q, betas[b], static_cast<int>(b), taus, cfg.trim, best, found);
    }
    if (!found) throw DataError("trim infeasible for all candidates");
    return best;
}

const char* to_string(BootstrapScheme s) {
    return s == BootstrapScheme::ParametricGaussian ? "parametric-gaussian" : "residual-resample";
}

BootstrapScheme parse_bootstrap_scheme(const std::string& s) {
    if (s == "parametric-gaussian") return BootstrapScheme::ParametricGaussian;
    if (s == "residual-resample") return BootstrapScheme::ResidualResample;
    throw_invalid("unknown bootstrap scheme '" + s + "'");
}

double add_one_pvalue(double statistic, std::span<const double> draws) {
    const auto exceed = std::count_if(draws.begin(), draws.end(), [&](double s) { return s >= statistic; });
    return (1.0 + static_cast<double>(exceed)) / (1.0 + static_cast<double>(draws.size()));
}

Panel bootstrap_panel(const Panel& panel, const VecmFit& null, BootstrapScheme scheme, std::uint64_t seed,
                      std::uint64_t stream) {
    const int q = null.q;
    const int steps = static_cast<int>(panel.size()) - q - 1;
    Engine rng = make_engine(seed, stream);
    Eigen::MatrixXd innovations;
    if (scheme == BootstrapScheme::ParametricGaussian) {
        innovations = gaussian_innovations(null.sigma, steps, rng);
    } else {
        const Eigen::MatrixXd& E = null.residuals;
        const Eigen::RowVectorXd mean = E.colwise().mean();
        std::uniform_int_distribution<Eigen::Index> pick(0, E.rows() - 1);
        innovations.resize(steps, 2);
        for (int i = 0; i < steps; ++i) innovations.row(i) = E.row(pick(rng)) - mean;
    }
    const Eigen::MatrixXd initial = panel.levels().topRows(q + 1);
    const Eigen::MatrixXd X = propagate_vecm(initial, null.A, null.coint.beta, innovations);
    std::vector<double> b(X.rows()), g(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        b[i] = X(i, 0);
        g[i] = X(i, 1);
    }
    return Panel(panel.timestamps(), Series(std::move(b), panel.benchmark().label()),
                 Series(std::move(g), panel.target().label()));
}

SupLmResult bootstrap_pvalue(const Panel& panel, int q, const GridConfig& cfg, const BootstrapOptions& opts) {
    if (opts.replications < 1) throw_invalid("replications >= 1 required");
    cfg.validate();
    const EngleGrangerResult eg = engle_granger(panel, opts.eg);
    const VecmFit null = fit_linear_vecm(panel, q, eg.coint);
    const SupLmStatistic observed = suplm_statistic(panel, q, eg.coint, cfg, opts.jointBeta);
    if (opts.scheme == BootstrapScheme::ParametricGaussian) {
        Engine probe(0);
        (void)gaussian_innovations(null.sigma, 0, probe);  // validates sigma up front
    }

    SupLmResult r;
    r.statistic = observed.statistic;
    r.tauHat = observed.tauHat;
    r.tauIndex = observed.tauIndex;
    r.tauGrid = observed.tauGrid;
    r.betaNull = eg.coint.beta;
    r.q = q;
    r.replications = opts.replications;
    r.seed = opts.seed;
    r.scheme = opts.scheme;
    r.bootstrapStats.assign(opts.replications, 0.0);

    auto attempt = [&](std::uint64_t stream) -> std::optional<double> {
        try {
            const Panel sim = bootstrap_panel(panel, null, opts.scheme, opts.seed, stream);
            const EngleGrangerResult simEg = engle_granger(sim, opts.eg);
            return suplm_statistic(sim, q, simEg.coint, cfg, opts.jointBeta).statistic;
        } catch (const DataError&) {
        } catch (const NumericalError&) {
        }
        return std::nullopt;
    };
    std::vector<char> failed(opts.replications, 0);
    auto run = [&](int begin, int stride) {
        for (int i = begin; i < opts.replications; i += stride) {
            auto s = attempt(2ULL * i);
            if (!s) s = attempt(2ULL * i + 1);
            if (s) {
                r.bootstrapStats[i] = *s;
            } else {
                r.bootstrapStats[i] = std::numeric_limits<double>::infinity();
                failed[i] = 1;
            }
        }
    };
    const int nw = std::clamp(opts.workers, 1, opts.replications);
    if (nw == 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nw; ++w) pool.emplace_back(run, w, nw);
        for (auto& t : pool) t.join();
    }
    r.failedReplications = static_cast<int>(std::count(failed.begin(), failed.end(), 1));
    r.pValue = add_one_pvalue(r.statistic, r.bootstrapStats);
    return r;
}

std::vector<TestTableRow> render_test_table(std::span<const MarketTest> results) {
    std::vector<TestTableRow> rows;
    rows.reserve(results.size());
    for (const auto& m : results) {
        rows.push_back({m.market, format_fixed(m.result.statistic, 2), format_percent(m.result.pValue),
                        format_fixed(m.result.tauHat, 1)});
    }
    return rows;
}

}  // namespace tcoint
