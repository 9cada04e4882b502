#include "tcoint/tvecm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "tcoint/errors.hpp"
#include "tcoint/ols.hpp"

namespace tcoint {

namespace {

constexpr double kTieTolerance = 1e-12;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SplitFit {
    std::vector<int> indicator;
    std::array<int, 2> counts{};
    Eigen::MatrixXd A1, A2;
    Eigen::MatrixXd residuals;
    Eigen::Matrix2d sigma;
    double logLik = 0.0;
};

std::optional<SplitFit> fit_split(const RegressorSet& reg, double tau, double trim) {
    const int n = reg.rows();
    const int k = static_cast<int>(reg.X.cols());
    SplitFit s;
    s.indicator = classify_regimes(std::span<const double>(reg.zLag.data(), n), tau);
    for (int v : s.indicator) ++s.counts[v - 1];
    const double minCount = trim * n;
    if (s.counts[0] < minCount || s.counts[1] < minCount) return std::nullopt;

    s.residuals.resize(n, 2);
    for (int r = 1; r <= 2; ++r) {
        const int nr = s.counts[r - 1];
        Eigen::MatrixXd& A = r == 1 ? s.A1 : s.A2;
        if (nr == 0) {
            A = Eigen::MatrixXd::Constant(k, 2, kNaN);
            continue;
        }
        if (nr < k) return std::nullopt;
        Eigen::MatrixXd Xr(nr, k), Yr(nr, 2);
        for (int i = 0, j = 0; i < n; ++i) {
            if (s.indicator[i] != r) continue;
            Xr.row(j) = reg.X.row(i);
            Yr.row(j) = reg.Y.row(i);
            ++j;
        }
        auto fit = try_least_squares(Xr, Yr);
        if (!fit) return std::nullopt;
        A = std::move(fit->coef);
        for (int i = 0, j = 0; i < n; ++i) {
            if (s.indicator[i] != r) continue;
            s.residuals.row(i) = fit->residuals.row(j++);
        }
    }
    s.sigma = s.residuals.transpose() * s.residuals / static_cast<double>(n);
    s.logLik = concentrated_loglik(s.sigma, n);
    if (!std::isfinite(s.logLik)) return std::nullopt;
    return s;
}

bool better(double ll, const GridPoint& c, double bestLl, const GridPoint& best) {
    if (ll > bestLl + kTieTolerance) return true;
    if (ll < bestLl - kTieTolerance) return false;
    if (c.tau != best.tau) return c.tau < best.tau;
    return c.beta < best.beta;
}

// Scores candidates [begin, end) reusing regressors while beta is unchanged.
void score_range(const Panel& panel, int q, std::span<const GridPoint> candidates, double trim,
                 std::size_t begin, std::size_t end, std::vector<double>& scores) {
    std::optional<RegressorSet> reg;
    double regBeta = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const auto& c = candidates[i];
        if (!reg || c.beta != regBeta) {
            reg = build_regressors(panel, q, c.beta);
            regBeta = c.beta;
        }
        const auto s = fit_split(*reg, c.tau, trim);
        scores[i] = s ? s->logLik : -std::numeric_limits<double>::infinity();
    }
}

}  // namespace

void GridConfig::validate() const {
    if (gridPoints < 2) throw_invalid("gridPoints must be >= 2");
    if (!(trim > 0.0 && trim < 0.5)) throw_invalid("trim must lie in (0, 0.5)");
    if (!(betaRadius >= 0.0) || !std::isfinite(betaRadius)) throw_invalid("betaRadius must be finite and >= 0");
}

std::vector<int> classify_regimes(std::span<const double> zLag, double tau) {
    std::vector<int> out(zLag.size());
    for (std::size_t i = 0; i < zLag.size(); ++i) out[i] = zLag[i] <= tau ? 1 : 2;
    return out;
}

std::vector<double> tau_grid(std::span<const double> zLag, int gridPoints, double trim) {
    if (gridPoints < 1) throw_invalid("gridPoints must be >= 1");
    if (!(trim >= 0.0 && trim < 0.5)) throw_invalid("trim must lie in [0, 0.5)");
    if (zLag.empty()) throw_invalid("empty error-correction series");
    std::vector<double> sorted(zLag.begin(), zLag.end());
    std::sort(sorted.begin(), sorted.end());
    const int n = static_cast<int>(sorted.size());
    const int m = static_cast<int>(std::ceil(trim * n - 1e-9));
    const int lo = std::clamp(m - 1, 0, n - 1);
    const int hi = std::clamp(n - m - 1, lo, n - 1);
    std::vector<double> grid(gridPoints);
    for (int i = 0; i < gridPoints; ++i) {
        const double w = gridPoints == 1 ? 0.0 : static_cast<double>(i) / (gridPoints - 1);
        const int idx = lo + static_cast<int>(std::lround(w * (hi - lo)));
        grid[i] = sorted[idx];
    }
    return grid;
}

std::vector<double> beta_grid(const CointVector& eg, const GridConfig& cfg) {
    if (cfg.fixBeta || !(eg.betaSe > 0.0) || cfg.betaRadius == 0.0) return {eg.beta};
    const double half = cfg.betaRadius * eg.betaSe;
    std::vector<double> grid(cfg.gridPoints);
    for (int i = 0; i < cfg.gridPoints; ++i) {
        grid[i] = eg.beta - half + 2.0 * half * i / (cfg.gridPoints - 1);
    }
    return grid;
}

std::optional<TvecmFit> fit_tvecm_at(const Panel& panel, int q, double beta, double tau, double trim,
                                     const CointVector& eg) {
    if (!(trim >= 0.0 && trim < 0.5)) throw_invalid("trim must lie in [0, 0.5)");
    const RegressorSet reg = build_regressors(panel, q, beta);
    auto s = fit_split(reg, tau, trim);
    if (!s) return std::nullopt;
    TvecmFit f;
    f.tau = tau;
    f.beta = beta;
    f.coint = eg;
    f.coint.beta = beta;
    f.q = q;
    f.tEff = reg.rows();
    f.A1 = std::move(s->A1);
    f.A2 = std::move(s->A2);
    f.residuals = std::move(s->residuals);
    f.sigma = s->sigma;
    f.regimeIndicator = std::move(s->indicator);
    f.regimeCounts = s->counts;
    f.logLik = s->logLik;
    f.regressors = reg.X;
    f.columnNames = reg.columnNames;
    f.benchmarkLabel = panel.benchmark().label();
    f.targetLabel = panel.target().label();
    std::tie(f.se1, f.se2) = eicker_white_se(f);
    return f;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> eicker_white_se(const TvecmFit& fit) {
    const Eigen::Index k = fit.regressors.cols();
    const Eigen::Index n = fit.regressors.rows();
    std::array<Eigen::MatrixXd, 2> se;
    for (int r = 1; r <= 2; ++r) {
        const int nr = fit.regimeCounts[r - 1];
        Eigen::MatrixXd& out = se[r - 1];
        out = Eigen::MatrixXd::Constant(k, 2, kNaN);
        if (nr == 0) continue;
        Eigen::MatrixXd Xr(nr, k), Er(nr, 2);
        for (Eigen::Index i = 0, j = 0; i < n; ++i) {
            if (fit.regimeIndicator[i] != r) continue;
            Xr.row(j) = fit.regressors.row(i);
            Er.row(j) = fit.residuals.row(i);
            ++j;
        }
        const auto ols = try_least_squares(Xr, Eigen::MatrixXd::Zero(nr, 1));
        if (!ols) throw NumericalError("singular regressor cross-product in regime " + std::to_string(r));
        for (int eq = 0; eq < 2; ++eq) {
            const Eigen::MatrixXd V = hc0_covariance(Xr, ols->xtxInv, Er.col(eq));
            out.col(eq) = V.diagonal().cwiseMax(0.0).cwiseSqrt();
        }
    }
    return {se[0], se[1]};
}

TvecmFit search_tvecm(const Panel& panel, int q, std::span<const GridPoint> candidates, double trim,
                      const CointVector& eg, int workers) {
    if (candidates.empty()) throw_invalid("no grid candidates");
    if (!(trim >= 0.0 && trim < 0.5)) throw_invalid("trim must lie in [0, 0.5)");
    std::vector<double> scores(candidates.size());
    const std::size_t nw = std::clamp<std::size_t>(workers < 1 ? 1 : workers, 1, candidates.size());
    if (nw == 1) {
        score_range(panel, q, candidates, trim, 0, candidates.size(), scores);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(nw);
        const std::size_t chunk = (candidates.size() + nw - 1) / nw;
        for (std::size_t w = 0; w < nw; ++w) {
            const std::size_t b = w * chunk, e = std::min(candidates.size(), b + chunk);
            pool.emplace_back([&, w, b, e] {
                try {
                    score_range(panel, q, candidates, trim, b, e, scores);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!std::isfinite(scores[i])) continue;
        if (!best || better(scores[i], candidates[i], scores[*best], candidates[*best])) best = i;
    }
    if (!best) throw DataError("trim infeasible for all candidates");
    auto fit = fit_tvecm_at(panel, q, candidates[*best].beta, candidates[*best].tau, trim, eg);
    if (!fit) throw NumericalError("best grid point could not be refitted");
    fit->tauIndex = static_cast<int>(*best);
    return *fit;
}

TvecmFit grid_search_tvecm(const Panel& panel, int q, const CointVector& eg, const GridConfig& cfg, int workers) {
    cfg.validate();
    const auto betas = beta_grid(eg, cfg);
    std::vector<GridPoint> candidates;
    candidates.reserve(betas.size() * cfg.gridPoints);
    for (double b : betas) {
        const RegressorSet reg = build_regressors(panel, q, b);
        const auto taus = tau_grid(std::span<const double>(reg.zLag.data(), reg.rows()), cfg.gridPoints, cfg.trim);
        for (double t : taus) candidates.push_back({b, t});
    }
    TvecmFit fit = search_tvecm(panel, q, candidates, cfg.trim, eg, workers);
    const int flat = fit.tauIndex;
    fit.betaIndex = flat / cfg.gridPoints;
    fit.tauIndex = flat % cfg.gridPoints;
    return fit;
}

std::vector<FitTableRow> render_fit_table(const TvecmFit& fit) {
    const Eigen::Index k = fit.A1.rows();
    std::vector<Eigen::Index> order{1, 0};
    for (Eigen::Index c = 2; c < k; ++c) order.push_back(c);
    std::vector<FitTableRow> rows;
    for (int eq = 0; eq < 2; ++eq) {
        for (Eigen::Index c : order) {
            FitTableRow row;
            row.equation = eq + 1;
            row.variable = c < static_cast<Eigen::Index>(fit.columnNames.size()) ? fit.columnNames[c]
                                                                                 : "x" + std::to_string(c);
            row.regime1 = {fit.A1(c, eq), fit.se1(c, eq)};
            row.regime2 = {fit.A2(c, eq), fit.se2(c, eq)};
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace tcoint
