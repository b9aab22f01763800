#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "gdpcast/error.hpp"
#include "gdpcast/linalg.hpp"
#include "gdpcast/unitroot.hpp"

using namespace gdpcast;

TEST_CASE("closed-form OLS oracle on the alternating series") {
    const std::vector<double> y{1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2};
    // No constant, no lags: dy_t = gamma * y_{t-1}. Scalar normal equation by hand.
    double sxy = 0, sxx = 0;
    for (std::size_t t = 1; t < y.size(); ++t) {
        sxy += y[t - 1] * (y[t] - y[t - 1]);
        sxx += y[t - 1] * y[t - 1];
    }
    const double gamma = sxy / sxx;
    double ssr = 0;
    for (std::size_t t = 1; t < y.size(); ++t) {
        const double e = (y[t] - y[t - 1]) - gamma * y[t - 1];
        ssr += e * e;
    }
    const double rows = static_cast<double>(y.size() - 1);
    const double expected = gamma / std::sqrt(ssr / (rows - 1) / sxx);
    CHECK(gamma == doctest::Approx(-4.0 / 26.0).epsilon(1e-14));

    auto r = adf_test(y, {AdfSpec::NoConstant, 0, false});
    CHECK(r.lags == 0);
    CHECK(r.n_effective == 11);
    CHECK(r.statistic == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.statistic == doctest::Approx(-0.7698).epsilon(1e-4));
}

TEST_CASE("constant series is a singular regression") {
    const std::vector<double> y(30, 5.0);
    CHECK_THROWS_AS(adf_test(y), SingularMatrixError);
}

TEST_CASE("adf preconditions and result invariants") {
    const std::vector<double> short_series(9, 1.0);
    CHECK_THROWS_AS(adf_test(short_series, {AdfSpec::Constant, 0, false}), std::invalid_argument);
    auto y = fixtures::random_walk(150, 3);
    for (auto spec : {AdfSpec::NoConstant, AdfSpec::Constant, AdfSpec::ConstantTrend}) {
        auto r = adf_test(y, {spec, {}, true});
        CHECK(r.spec == spec);
        CHECK(r.lags >= 0);
        CHECK(r.lags <= schwert_max_lag(y.size()));
        CHECK(r.n_effective == y.size() - 1 - r.lags);
        CHECK(r.p_value >= 0.0);
        CHECK(r.p_value <= 1.0);
    }
    nlohmann::json j = adf_test(y);
    for (auto key : {"statistic", "p_value", "lags", "spec", "n_effective"}) CHECK(j.contains(key));
}

TEST_CASE("schwert rule") {
    CHECK(schwert_max_lag(100) == 12);
    CHECK(schwert_max_lag(116) == 12);
    CHECK(schwert_max_lag(200) == 14);
}

TEST_CASE("spec parsing") {
    CHECK(parse_adf_spec("constant") == AdfSpec::Constant);
    CHECK(parse_adf_spec("none") == AdfSpec::NoConstant);
    CHECK(parse_adf_spec("trend") == AdfSpec::ConstantTrend);
    CHECK_FALSE(parse_adf_spec("quadratic"));
}

TEST_CASE("df_pvalue knots, clamps and monotonicity") {
    CHECK(df_pvalue(-2.86, AdfSpec::Constant) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(df_pvalue(-3.43, AdfSpec::Constant) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(df_pvalue(-1.95, AdfSpec::NoConstant) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(df_pvalue(-3.41, AdfSpec::ConstantTrend) == doctest::Approx(0.05).epsilon(1e-12));
    for (auto spec : {AdfSpec::NoConstant, AdfSpec::Constant, AdfSpec::ConstantTrend}) {
        CHECK(df_pvalue(-50, spec) == 0.001);
        CHECK(df_pvalue(50, spec) == 0.999);
        double prev = -1.0;
        for (int i = 0; i < 1000; ++i) {
            const double stat = -8.0 + 12.0 * i / 999.0;
            const double p = df_pvalue(stat, spec);
            CHECK(p >= prev);
            CHECK(p >= 0.001);
            CHECK(p <= 0.999);
            prev = p;
        }
    }
}

TEST_CASE("OLS residuals are orthogonal to the regressors") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> z(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 40 + rep, k = 1 + rep % 6;
        Eigen::MatrixXd x(n, k);
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < k; ++j) x(i, j) = z(rng) * std::pow(10.0, j);
            y(i) = z(rng) * 3.0 + x(i, 0);
        }
        auto fit = linalg::ols(x, y);
        const double scale = x.norm() * fit.residuals.norm();
        CHECK((x.transpose() * fit.residuals).cwiseAbs().maxCoeff() < 1e-6 * scale);
        // Oracle: Eigen's QR least squares.
        Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
        for (int j = 0; j < k; ++j) {
            CHECK(fit.coefficients(j) == doctest::Approx(beta(j)).epsilon(1e-8));
        }
        CHECK(fit.sigma2 == doctest::Approx(fit.ssr / (n - k)));
    }
}

TEST_CASE("solve_pivoted rejects a singular system") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 2, 2, 4;
    Eigen::MatrixXd b = Eigen::MatrixXd::Ones(2, 1);
    CHECK_THROWS_AS(linalg::solve_pivoted(a, b), SingularMatrixError);
}

TEST_CASE("simulated random walks are rarely rejected, AR(1) almost always") {
    int walk_kept = 0, ar_rejected = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        if (adf_test(fixtures::random_walk(200, seed)).p_value > 0.05) ++walk_kept;
        if (adf_test(fixtures::ar_lag(200, 0.5, 1, 1000 + seed)).p_value < 0.05) ++ar_rejected;
    }
    MESSAGE("random walk not rejected: " << walk_kept << "/100, AR(1) rejected: " << ar_rejected << "/100");
    CHECK(walk_kept >= 90);
    CHECK(ar_rejected >= 90);
}
