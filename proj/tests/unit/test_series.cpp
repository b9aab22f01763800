#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "gdpcast/error.hpp"
#include "gdpcast/series.hpp"

using namespace gdpcast;

namespace {

TimeSeries parse(const std::string& text) {
    std::istringstream in(text);
    return parse_csv(in);
}

// Bias-corrected skewness/kurtosis written through central moments, an
// algebraically independent route from the standardized-sum formulas.
struct MomentOracle {
    double skew;
    double kurt;
};

MomentOracle moment_oracle(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : x) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double g1 = m3 / std::pow(m2, 1.5);
    const double g2 = m4 / (m2 * m2) - 3.0;
    return {std::sqrt(n * (n - 1)) / (n - 2) * g1,
            (n - 1) / ((n - 2) * (n - 3)) * ((n + 1) * g2 + 6.0)};
}

}  // namespace

TEST_CASE("Period parsing and arithmetic") {
    auto p = Period::parse("1995-Q1");
    REQUIRE(p);
    CHECK(p->year == 1995);
    CHECK(p->quarter == 1);
    CHECK(p->advance(4).to_string() == "1996-Q1");
    CHECK(Period{2020, 4}.next().to_string() == "2021-Q1");
    CHECK_FALSE(Period::parse("1995-Q5"));
    CHECK_FALSE(Period::parse("1995Q1"));
    CHECK_FALSE(Period::parse("95-Q1"));
}

TEST_CASE("CSV ingestion") {
    SUBCASE("rows in file order") {
        auto s = parse("period,value\n1995-Q1,84817.9\n1995-Q2,90000.5\n1995-Q3,91000\n");
        REQUIRE(s.size() == 3);
        CHECK(s.values()[0] == 84817.9);
        CHECK(s.values()[2] == 91000.0);
        CHECK(s.first_period().to_string() == "1995-Q1");
        CHECK(s.last_period().to_string() == "1995-Q3");
    }
    SUBCASE("gap reports the missing quarter and line") {
        try {
            parse("period,value\n2020-Q1,1.0\n2020-Q3,2.0\n");
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(e.line() == 3);
            CHECK(std::string(e.what()).find("2020-Q2") != std::string::npos);
        }
    }
    SUBCASE("duplicate quarter") {
        CHECK_THROWS_AS(parse("period,value\n2020-Q1,1\n2020-Q1,2\n"), DataError);
    }
    SUBCASE("empty data section") {
        try {
            parse("period,value\n");
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("length < 2") != std::string::npos);
        }
    }
    SUBCASE("malformed row names its line") {
        try {
            parse("period,value\n2020-Q1,1\n2020-Q2,abc\n");
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("non-finite value") {
        CHECK_THROWS_AS(parse("period,value\n2020-Q1,1\n2020-Q2,nan\n"), DataError);
    }
    SUBCASE("wrong header") {
        CHECK_THROWS_AS(parse("date,gdp\n2020-Q1,1\n2020-Q2,2\n"), DataError);
    }
    SUBCASE("missing file names the path") {
        try {
            load_csv("/nonexistent/gdp.csv");
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("/nonexistent/gdp.csv") != std::string::npos);
        }
    }
}

TEST_CASE("describe on [1,2,3,4]") {
    const std::vector<double> x{1, 2, 3, 4};
    auto s = describe(x);
    CHECK(s.n == 4);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.median == doctest::Approx(2.5));
    CHECK(s.std_dev == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-12));
    CHECK(s.std_dev == doctest::Approx(1.290994).epsilon(1e-6));
    CHECK(s.standard_error == doctest::Approx(0.645497).epsilon(1e-6));
    REQUIRE(s.skewness);
    CHECK(std::abs(*s.skewness) < 1e-12);
    REQUIRE(s.excess_kurtosis);
    CHECK(*s.excess_kurtosis == doctest::Approx(-1.2).epsilon(1e-12));
    CHECK(s.range == 3.0);
    CHECK(s.min == 1.0);
    CHECK(s.max == 4.0);
}

TEST_CASE("describe on a constant series leaves the shape statistics undefined") {
    const std::vector<double> x{5, 5, 5, 5};
    auto s = describe(x);
    CHECK(s.mean == 5.0);
    CHECK(s.std_dev == 0.0);
    CHECK_FALSE(s.skewness);
    CHECK_FALSE(s.excess_kurtosis);
    nlohmann::json j = s;
    CHECK(j["skewness"].is_null());
}

TEST_CASE("describe requires four observations") {
    const std::vector<double> x{1, 2, 3};
    CHECK_THROWS_AS(describe(x), std::invalid_argument);
}

TEST_CASE("describe matches the central-moment oracle and its invariants") {
    std::mt19937_64 rng(11);
    std::lognormal_distribution<double> draw(0.0, 0.7);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x(5 + rep);
        for (auto& v : x) v = draw(rng);
        auto s = describe(x);
        auto o = moment_oracle(x);
        CHECK(*s.skewness == doctest::Approx(o.skew).epsilon(1e-10));
        CHECK(*s.excess_kurtosis == doctest::Approx(o.kurt).epsilon(1e-10));
        CHECK(s.range == s.max - s.min);
        CHECK(s.min <= s.median);
        CHECK(s.median <= s.max);
        CHECK(s.standard_error == doctest::Approx(s.std_dev / std::sqrt(double(x.size()))));

        auto shuffled = x;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto p = describe(shuffled);
        CHECK(p.mean == doctest::Approx(s.mean).epsilon(1e-14));
        CHECK(p.std_dev == doctest::Approx(s.std_dev).epsilon(1e-12));
        CHECK(*p.skewness == doctest::Approx(*s.skewness).epsilon(1e-10));
        CHECK(*p.excess_kurtosis == doctest::Approx(*s.excess_kurtosis).epsilon(1e-10));
        CHECK(p.median == s.median);

        for (double a : {2.5, -0.5}) {
            const double b = 7.0;
            std::vector<double> y(x.size());
            std::transform(x.begin(), x.end(), y.begin(), [&](double v) { return a * v + b; });
            auto t = describe(y);
            CHECK(t.mean == doctest::Approx(a * s.mean + b).epsilon(1e-12));
            CHECK(t.std_dev == doctest::Approx(std::abs(a) * s.std_dev).epsilon(1e-12));
            CHECK(*t.skewness == doctest::Approx((a > 0 ? 1 : -1) * *s.skewness).epsilon(1e-9));
            CHECK(*t.excess_kurtosis == doctest::Approx(*s.excess_kurtosis).epsilon(1e-9));
        }
    }
}

TEST_CASE("difference examples") {
    const std::vector<double> a{1, 2, 4};
    CHECK(difference(a, 1, 0, 4) == std::vector<double>{1, 2});
    const std::vector<double> b{1, 2, 3, 4, 2, 3, 4, 5};
    CHECK(difference(b, 0, 1, 4) == std::vector<double>{1, 1, 1, 1});
    CHECK(difference(b, 1, 1, 4) == std::vector<double>{0, 0, 0});
    const std::vector<double> tiny{1, 2, 3, 4};
    CHECK_THROWS_AS(difference(tiny, 0, 1, 4), std::invalid_argument);
}

TEST_CASE("differencing polynomial") {
    // (1-B)(1-B^4) = 1 - B - B^4 + B^5
    CHECK(differencing_polynomial(1, 1, 4) == std::vector<double>{-1, 0, 0, -1, 1});
    CHECK(differencing_polynomial(2, 0, 4) == std::vector<double>{-2, 1});
    CHECK(differencing_polynomial(0, 0, 4).empty());
}

TEST_CASE("integrate_forecasts examples") {
    const std::vector<double> h1{10};
    const std::vector<double> d1{1, 1};
    CHECK(integrate_forecasts(h1, d1, 1, 0, 4) == std::vector<double>{11, 12});
    const std::vector<double> h2{1, 2, 3, 4, 2, 3, 4, 5};
    const std::vector<double> d2{0};
    auto out = integrate_forecasts(h2, d2, 1, 1, 4);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == doctest::Approx(3.0));
    CHECK_THROWS_AS(integrate_forecasts(h1, d1, 2, 0, 4), std::invalid_argument);
}

TEST_CASE("round trip: integrating the differenced tail restores the original") {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> z(0.0, 50.0);
    const int tail = 4;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> x(30);
        double level = 1000.0;
        for (auto& v : x) v = level += z(rng);
        for (int d = 0; d <= 2; ++d) {
            for (int D = 0; D <= 1; ++D) {
                auto w = difference(x, d, D, 4);
                const std::span<const double> history(x.data(), x.size() - tail);
                const std::span<const double> diffs(w.data() + w.size() - tail, tail);
                auto back = integrate_forecasts(history, diffs, d, D, 4);
                REQUIRE(back.size() == tail);
                for (int i = 0; i < tail; ++i) {
                    CHECK(std::abs(back[i] - x[x.size() - tail + i]) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("split_holdout") {
    TimeSeries s(Period{1995, 1}, fixtures::ramp(116));
    auto [train, test] = split_holdout(s, 4);
    CHECK(train.size() == 112);
    CHECK(test.size() == 4);
    CHECK(train.last_period().to_string() == "2022-Q4");
    CHECK(test.first_period().to_string() == "2023-Q1");
    CHECK(test.last_period() == s.last_period());
    CHECK(train.values()[0] == s.values()[0]);
    CHECK(test.values()[3] == s.values()[115]);

    auto [one, rest] = split_holdout(s, s.size() - 1);
    CHECK(one.size() == 1);
    CHECK(one.size() + rest.size() == s.size());
    CHECK_THROWS_AS(split_holdout(s, 0), std::invalid_argument);
    CHECK_THROWS_AS(split_holdout(s, s.size()), std::invalid_argument);
}

TEST_CASE("make_windows") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    auto w = make_windows(x, 2);
    REQUIRE(w.size() == 3);
    CHECK(w[0].inputs == std::vector<double>{1, 2});
    CHECK(w[0].target == 3);
    CHECK(w[2].inputs == std::vector<double>{3, 4});
    CHECK(w[2].target == 5);
    CHECK(w[2].target_index == 4);

    CHECK(make_windows(fixtures::ramp(112), 4).size() == 108);
    const std::vector<double> short_series{1, 2};
    CHECK_THROWS_AS(make_windows(short_series, 4), std::invalid_argument);

    auto r = fixtures::ramp(50);
    auto all = make_windows(r, 6);
    CHECK(all.size() == r.size() - 6);
    std::vector<int> seen(r.size(), 0);
    for (const auto& win : all) {
        CHECK(win.target_index >= 6);
        CHECK(win.target == r[win.target_index]);
        for (std::size_t k = 0; k < win.inputs.size(); ++k) {
            CHECK(win.inputs[k] == r[win.target_index - 6 + k]);
        }
        ++seen[win.target_index];
    }
    CHECK(std::count(seen.begin() + 6, seen.end(), 1) == static_cast<long>(all.size()));
}
