#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fixtures.hpp"
#include "gdpcast/evaluation.hpp"
#include "gdpcast/tuning.hpp"

using namespace gdpcast;
using namespace gdpcast::tuning;

namespace {

lstm::LstmConfig small_base() {
    lstm::LstmConfig c;
    c.units = 4;
    c.epochs = 30;
    c.learning_rate = 0.01;
    c.l2_lambda = 0.0;
    return c;
}

LstmSearchSpace toy_space() {
    LstmSearchSpace s;
    s.epochs = {20, 40};
    s.recurrent_dropout = {0.0, 0.2};
    s.units = {3};
    s.batch_size = {1, 4};
    s.l2_lambda = {0.0};
    return s;
}

bool same_config(const lstm::LstmConfig& a, const lstm::LstmConfig& b) {
    return a.epochs == b.epochs && a.units == b.units && a.recurrent_dropout == b.recurrent_dropout &&
           a.batch_size == b.batch_size && a.l2_lambda == b.l2_lambda;
}

}  // namespace

TEST_CASE("search space enumeration") {
    LstmSearchSpace s;
    CHECK(s.size() == 324);
    auto all = s.configurations(lstm::LstmConfig{});
    CHECK(all.size() == 324);
    CHECK(all.front().epochs == 250);
    CHECK(all.front().l2_lambda == 0.01);
    CHECK(all[1].l2_lambda == 0.02);
    CHECK(all.back().units == 1000);
    s.units.clear();
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("cv_splits examples") {
    auto p = cv_splits(12, 3);
    REQUIRE(p.size() == 3);
    CHECK(p[0] == Fold{{0, 3}, {3, 6}});
    CHECK(p[1] == Fold{{0, 6}, {6, 9}});
    CHECK(p[2] == Fold{{0, 9}, {9, 12}});
    auto one = cv_splits(8, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == Fold{{0, 4}, {4, 8}});
    CHECK_THROWS_AS(cv_splits(5, 3), std::invalid_argument);
    // Remainder goes to the earliest blocks: 14 = 4 + 4 + 3 + 3.
    auto r = cv_splits(14, 3);
    CHECK(r[0] == Fold{{0, 4}, {4, 8}});
    CHECK(r[2] == Fold{{0, 11}, {11, 14}});
}

TEST_CASE("cv folds respect time order") {
    for (std::size_t n = 2; n <= 120; ++n) {
        for (int k = 1; 2 * (k + 1) <= static_cast<int>(n) && k <= 6; ++k) {
            auto plan = cv_splits(n, k);
            REQUIRE(plan.size() == static_cast<std::size_t>(k));
            for (std::size_t i = 0; i < plan.size(); ++i) {
                const auto& f = plan[i];
                CHECK(f.train.begin == 0);
                CHECK(f.train.size() > 0);
                CHECK(f.validation.size() > 0);
                CHECK(f.train.end - 1 < f.validation.begin);
                if (i > 0) CHECK(plan[i - 1].validation.end == f.validation.begin);
            }
            CHECK(plan.back().validation.end == n);
        }
    }
}

TEST_CASE("trial seeds follow configuration identity") {
    auto a = small_base(), b = small_base();
    CHECK(trial_seed(42, a) == trial_seed(42, b));
    b.units = 5;
    CHECK(trial_seed(42, a) != trial_seed(42, b));
    CHECK(trial_seed(42, a) != trial_seed(43, a));
}

TEST_CASE("singleton and duplicate searches") {
    auto windows = make_windows(fixtures::ramp(30), 4);
    SearchOptions opt;
    auto base = small_base();
    auto single = run_lstm_search(std::vector{base}, windows, opt);
    REQUIRE(single.ledger.size() == 1);
    CHECK(same_config(single.best, base));
    const auto& t = single.ledger[0];
    CHECK(t.ok);
    CHECK(t.fold_mse.size() == 3);
    CHECK(t.mean_mse == doctest::Approx(std::accumulate(t.fold_mse.begin(), t.fold_mse.end(), 0.0) / 3));

    auto dup = run_lstm_search(std::vector{base, base}, windows, opt);
    CHECK(dup.ledger[0].mean_mse == dup.ledger[1].mean_mse);
    CHECK(&select_best(dup.ledger) == &dup.ledger[0]);
}

TEST_CASE("selection is invariant to enumeration order and worker count") {
    auto windows = make_windows(fixtures::ramp(36), 4);
    auto configs = toy_space().configurations(small_base());
    SearchOptions opt;
    auto forward = run_lstm_search(configs, windows, opt);
    CHECK(forward.ledger.size() == configs.size());

    auto reversed_configs = configs;
    std::reverse(reversed_configs.begin(), reversed_configs.end());
    auto reversed = run_lstm_search(reversed_configs, windows, opt);
    CHECK(same_config(forward.best, reversed.best));
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const auto& a = forward.ledger[i];
        const auto& b = reversed.ledger[configs.size() - 1 - i];
        CHECK(a.seed == b.seed);
        CHECK(a.fold_mse == b.fold_mse);
    }

    opt.workers = 3;
    auto parallel = run_lstm_search(configs, windows, opt);
    CHECK(same_config(forward.best, parallel.best));
    for (std::size_t i = 0; i < configs.size(); ++i) {
        CHECK(forward.ledger[i].fold_mse == parallel.ledger[i].fold_mse);
        CHECK(forward.ledger[i].mean_mse == parallel.ledger[i].mean_mse);
    }

    std::ostringstream csv;
    write_ledger_csv(csv, forward.ledger);
    const auto text = csv.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(configs.size() + 1));
    CHECK(text.find("fold1_mse") != std::string::npos);
    CHECK(text.find("mean_mse") != std::string::npos);
}

TEST_CASE("select_best tie-breaks and failures") {
    TrialResult a, b, c;
    a.config = small_base();
    a.config.units = 8;
    a.mean_mse = 1.0;
    a.ok = true;
    b.config = small_base();
    b.config.units = 4;
    b.mean_mse = 1.0;
    b.ok = true;
    c.config = small_base();
    c.mean_mse = 0.1;
    c.ok = false;
    std::vector<TrialResult> ledger{a, b, c};
    CHECK(select_best(ledger).config.units == 4);
    ledger[1].config.units = 8;
    ledger[1].config.epochs = 10;
    CHECK(select_best(ledger).config.epochs == 10);
    std::vector<TrialResult> failed{c};
    CHECK_THROWS(select_best(failed));
}

TEST_CASE("final_fit is repeatable") {
    auto windows = make_windows(fixtures::ramp(24), 4);
    auto cfg = small_base();
    auto a = final_fit(cfg, windows, 42);
    auto b = final_fit(cfg, windows, 42);
    CHECK(a.history.mse == b.history.mse);
    auto ta = std::as_const(a.model.weights).tensors();
    auto tb = std::as_const(b.model.weights).tensors();
    for (std::size_t t = 0; t < ta.size(); ++t) CHECK(std::equal(ta[t].begin(), ta[t].end(), tb[t].begin()));
}

TEST_CASE("ramp end to end with a two-configuration space") {
    auto y = fixtures::ramp(48);
    auto series = TimeSeries(Period{2000, 1}, y);
    auto [train_part, test_part] = split_holdout(series, 4);
    auto windows = make_windows(train_part.values(), 4);
    lstm::LstmConfig base;
    base.units = 8;
    base.learning_rate = 0.01;
    base.l2_lambda = 0.0;
    LstmSearchSpace space;
    space.epochs = {300, 500};
    space.recurrent_dropout = {0.0};
    space.units = {8};
    space.batch_size = {1};
    space.l2_lambda = {0.0};
    auto search = run_lstm_search(space, base, windows, SearchOptions{});
    auto model = final_fit(search.best, windows, 42).model;
    auto fc = lstm::forecast_recursive(model, train_part.values(), 4);
    const double m = eval::mape(test_part.values(), fc);
    MESSAGE("ramp holdout MAPE " << m << "%");
    CHECK(m < 5.0);
}
