#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "gdpcast/evaluation.hpp"

using namespace gdpcast::eval;

TEST_CASE("metric examples") {
    const std::vector<double> a{100, 200};
    const std::vector<double> p{110, 190};
    CHECK(mse(a, p) == 100.0);
    CHECK(mae(a, p) == 10.0);
    CHECK(mape(a, p) == doctest::Approx(7.5).epsilon(1e-15));
    CHECK(mse(a, a) == 0.0);
    CHECK(mae(a, a) == 0.0);
    CHECK(mape(a, a) == 0.0);
}

TEST_CASE("metric preconditions") {
    const std::vector<double> a{1, 2};
    const std::vector<double> b{1};
    const std::vector<double> empty;
    const std::vector<double> zero{0, 1};
    CHECK_THROWS_AS(mse(a, b), std::invalid_argument);
    CHECK_THROWS_AS(mae(empty, empty), std::invalid_argument);
    CHECK_THROWS_AS(mape(zero, a), std::invalid_argument);
}

TEST_CASE("metric properties on random pairs") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(50.0, 500.0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 1 + rep % 9;
        std::vector<double> a(n), p(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = u(rng);
            p[i] = u(rng);
        }
        auto m = metrics(a, p);
        CHECK(m.n == n);
        CHECK(m.mse >= 0.0);
        CHECK(m.mae <= std::sqrt(m.mse) * (1 + 1e-12));

        const double k = 3.7;
        std::vector<double> ka(a), kp(p);
        for (auto& v : ka) v *= k;
        for (auto& v : kp) v *= k;
        CHECK(mse(ka, kp) == doctest::Approx(k * k * m.mse).epsilon(1e-12));
        CHECK(mae(ka, kp) == doctest::Approx(k * m.mae).epsilon(1e-12));
        CHECK(mape(ka, kp) == doctest::Approx(m.mape).epsilon(1e-12));

        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<double> pa(n), pp(n);
        for (std::size_t i = 0; i < n; ++i) {
            pa[i] = a[idx[i]];
            pp[i] = p[idx[i]];
        }
        CHECK(mse(pa, pp) == doctest::Approx(m.mse).epsilon(1e-12));
        CHECK(mae(pa, pp) == doctest::Approx(m.mae).epsilon(1e-12));
        CHECK(mape(pa, pp) == doctest::Approx(m.mape).epsilon(1e-12));
    }
}

TEST_CASE("compare") {
    const std::vector<double> a{100, 200, 300, 400};
    std::map<std::string, std::vector<double>> preds{{"SARIMA", {101, 198, 305, 390}},
                                                     {"LSTM", {100, 201, 299, 402}}};
    auto r = compare(a, preds);
    REQUIRE(r.models.size() == 2);
    CHECK(r.models.begin()->first == "LSTM");
    CHECK(r.models.at("SARIMA").mae == mae(a, preds["SARIMA"]));
    CHECK(r.actual == a);

    auto same = compare(a, {{"x", preds["LSTM"]}, {"y", preds["LSTM"]}});
    CHECK(same.models.at("x").mse == same.models.at("y").mse);
    CHECK(same.models.at("x").mape == same.models.at("y").mape);

    auto single = compare(a, {{"LSTM", preds["LSTM"]}});
    CHECK(single.models.size() == 1);

    try {
        compare(a, {{"LSTM", preds["LSTM"]}, {"SARIMA", {1, 2}}});
        FAIL("expected length error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("SARIMA") != std::string::npos);
    }

    auto text = format_table(r);
    CHECK(text.find("MAPE") != std::string::npos);
    CHECK(text.find("MAE") != std::string::npos);
    CHECK(text.find("MSE") != std::string::npos);
    CHECK(text.find("LSTM") < text.find("SARIMA"));
    nlohmann::json j = r;
    CHECK(j.dump().find("SARIMA") != std::string::npos);
}
