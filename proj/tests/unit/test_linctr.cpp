#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tcoint/errors.hpp"
#include "tcoint/linctr.hpp"
#include "tcoint/simulate.hpp"

using namespace tcoint;

namespace {

Panel from_columns(const std::vector<double>& b, const std::vector<double>& g) {
    Eigen::MatrixXd L(b.size(), 2);
    for (std::size_t t = 0; t < b.size(); ++t) L.row(t) << b[t], g[t];
    return panel_from_levels(L, "1990-01", "US", "Mex");
}

Panel cointegrated_pair(int T, std::uint64_t seed, double slope = 2.0) {
    const auto b = fixtures::random_walk(T, seed);
    const auto u = fixtures::ar1(T, 0.5, seed + 7'000'000);
    std::vector<double> g(T);
    for (int t = 0; t < T; ++t) g[t] = slope * b[t] + u[t];
    return from_columns(b, g);
}

Panel linear_vecm_panel(int T, std::uint64_t seed) {
    const auto s = fixtures::linear_spec(T, seed);
    return simulate_linear_vecm(s.A1, s.noiseCov, s.beta, T, s.burnIn, seed, "1985-01", "US", "Mex");
}

}  // namespace

TEST(EngleGranger, StepOneMatchesOlsOracle) {
    const Panel p = cointegrated_pair(200, 1);
    const auto r = engle_granger(p);
    Eigen::MatrixXd X(200, 2);
    Eigen::VectorXd y(200);
    for (int t = 0; t < 200; ++t) {
        X.row(t) << 1.0, p.benchmark()[t];
        y(t) = p.target()[t];
    }
    const auto o = oracle::ols(X, y);
    EXPECT_NEAR(r.slope, o.coef(1, 0), 1e-8);
    EXPECT_NEAR(r.slopeIntercept, o.coef(0, 0), 1e-8);
    EXPECT_NEAR(r.coint.beta, 1.0 / o.coef(1, 0), 1e-8);
    for (int t = 0; t < 200; ++t) EXPECT_NEAR(r.residuals[t], o.residuals(t, 0), 1e-8);
    EXPECT_EQ(r.coint.alpha()[0], 1.0);
    EXPECT_EQ(r.coint.alpha()[1], -r.coint.beta);
}

TEST(EngleGranger, ReverseDirectionReportsBetaDirectly) {
    const Panel p = cointegrated_pair(200, 2);
    const auto r = engle_granger(p, {.direction = EgDirection::BenchmarkOnTarget});
    EXPECT_EQ(r.coint.beta, r.slope);
    EXPECT_EQ(r.coint.intercept, r.slopeIntercept);
    EXPECT_NEAR(r.coint.beta, 0.5, 0.05);
}

TEST(EngleGranger, CointegratedPairsAccepted) {
    int accepted = 0, slopeOk = 0;
    const int reps = 200, T = 300;
    for (int i = 0; i < reps; ++i) {
        const auto r = engle_granger(cointegrated_pair(T, 100 + i));
        accepted += r.cointegrated_at(Level::FivePercent);
        slopeOk += std::abs(r.slope - 2.0) < 2.0 / std::sqrt(T);
    }
    EXPECT_GE(accepted, 190);
    EXPECT_GE(slopeOk, 190);
}

TEST(EngleGranger, IndependentWalksRarelyAccepted) {
    int accepted = 0;
    for (int i = 0; i < 200; ++i) {
        const Panel p = from_columns(fixtures::random_walk(300, 500 + i), fixtures::random_walk(300, 90'000 + i));
        accepted += engle_granger(p).cointegrated_at(Level::FivePercent);
    }
    EXPECT_LE(accepted, 20);
}

TEST(EngleGranger, IdenticalSeriesAreDegenerate) {
    const auto b = fixtures::random_walk(100, 3);
    try {
        engle_granger(from_columns(b, b));
        FAIL();
    } catch (const NumericalError& e) {
        EXPECT_STREQ(e.what(), "degenerate cointegration regression");
    }
}

TEST(EngleGranger, BetaInvariantToCommonShift) {
    const Panel p = cointegrated_pair(150, 4);
    const Eigen::MatrixXd L = p.levels().array() + 123.0;
    const auto a = engle_granger(p);
    const auto b = engle_granger(panel_from_levels(L, "1990-01", "US", "Mex"));
    EXPECT_NEAR(a.coint.beta, b.coint.beta, 1e-9);
    EXPECT_NEAR(a.residualTest.statistic, b.residualTest.statistic, 1e-7);
}

TEST(EngleGranger, ShortSampleRejected) {
    EXPECT_THROW(engle_granger(cointegrated_pair(29, 5)), DataError);
}

TEST(LinearVecm, MatchesOlsOracle) {
    const Panel p = linear_vecm_panel(200, 6);
    const CointVector cv{.beta = 1.0};
    const VecmFit f = fit_linear_vecm(p, 1, cv);
    const RegressorSet reg = build_regressors(p, 1, 1.0);
    const auto o = oracle::ols(reg.X, reg.Y);
    EXPECT_LT((f.A - o.coef).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((f.residuals - o.residuals).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_NEAR(f.logLik, oracle::loglik2(o.residuals), 1e-8);
    EXPECT_EQ(f.tEff, 198);
}

TEST(LinearVecm, InvariantsHold) {
    for (int q = 0; q <= 3; ++q) {
        const Panel p = linear_vecm_panel(120, 7 + q);
        const VecmFit f = fit_linear_vecm(p, q, {.beta = 0.97});
        const RegressorSet reg = build_regressors(p, q, 0.97);
        const Eigen::MatrixXd xe = reg.X.transpose() * f.residuals;
        EXPECT_LT(xe.cwiseAbs().maxCoeff() / f.tEff, 1e-8);
        const Eigen::Matrix2d s = f.residuals.transpose() * f.residuals / static_cast<double>(f.tEff);
        EXPECT_EQ(f.sigma, s);
        EXPECT_EQ(f.sigma(0, 1), f.sigma(1, 0));
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(f.sigma);
        EXPECT_GE(es.eigenvalues().minCoeff(), 0.0);
        const double ll = -(f.tEff / 2.0) * (2.0 * std::log(2.0 * M_PI) + std::log(f.sigma.determinant()) + 2.0);
        EXPECT_NEAR(f.logLik, ll, 1e-9 * std::abs(ll));
    }
}

TEST(LinearVecm, LogLikNonDecreasingInQOnCommonSample) {
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        const Panel p = linear_vecm_panel(150, seed);
        double prev = -std::numeric_limits<double>::infinity();
        for (int q = 0; q <= 4; ++q) {
            const double ll = fit_linear_vecm(p, q, {.beta = 1.0}, 4).logLik;
            EXPECT_GE(ll, prev - 1e-9);
            prev = ll;
        }
    }
}

TEST(LinearVecm, RecoversDgpWithinThreeStandardErrors) {
    const Eigen::MatrixXd A = fixtures::linear_a();
    int covered = 0, total = 0;
    for (int r = 0; r < 200; ++r) {
        DgpSpec s = fixtures::linear_spec(300, 1000 + r);
        const Panel p = simulate_tvecm(s);
        const VecmFit f = fit_linear_vecm(p, 1, {.beta = s.beta});
        for (int eq = 0; eq < 2; ++eq) {
            const RegressorSet reg = build_regressors(p, 1, s.beta);
            const double s2 = f.residuals.col(eq).squaredNorm() / (f.tEff - reg.X.cols());
            bool all = true;
            for (int c = 0; c < A.rows(); ++c) {
                const double se = std::sqrt(s2 * f.xtxInv(c, c));
                all = all && std::abs(f.A(c, eq) - A(c, eq)) <= 3.0 * se;
            }
            covered += all;
            ++total;
        }
    }
    EXPECT_GE(static_cast<double>(covered) / total, 0.90);
}

TEST(SelectLag, RecoversLagOneDynamics) {
    int hits = 0;
    for (int r = 0; r < 200; ++r) {
        DgpSpec s = fixtures::linear_spec(400, 2000 + r);
        s.A1 = s.A2 = fixtures::coef({{0.1, 0.1}, {-0.2, 0.15}, {0.35, 0.1}, {-0.1, 0.3}});
        const Panel p = simulate_tvecm(s);
        hits += select_lag(p, {.beta = 1.0}) == 1;
    }
    EXPECT_GE(hits, 160);
}

TEST(SelectLag, SingletonSearchSpace) {
    const Panel p = linear_vecm_panel(100, 40);
    EXPECT_EQ(select_lag(p, {.beta = 1.0}, 0), 0);
    EXPECT_EQ(auto_max_lag(248), schwert_max_lag(247));
    EXPECT_EQ(auto_max_lag(20), 7);
    EXPECT_EQ(auto_max_lag(12), 0);
}

TEST(SelectLag, MatchesExplicitBicArgmin) {
    const Panel p = linear_vecm_panel(150, 41);
    const int qMax = 5;
    int best = 0;
    double bestIc = 1e300;
    for (int q = 0; q <= qMax; ++q) {
        const RegressorSet reg = build_regressors(p, q, 1.0, qMax);
        const auto o = oracle::ols(reg.X, reg.Y);
        const double bic = -2.0 * oracle::loglik2(o.residuals) + std::log(reg.rows()) * 2.0 * (2 + 2 * q);
        if (bic < bestIc) {
            bestIc = bic;
            best = q;
        }
    }
    EXPECT_EQ(select_lag(p, {.beta = 1.0}, qMax), best);
}
