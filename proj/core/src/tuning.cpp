#include "gdpcast/tuning.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "gdpcast/evaluation.hpp"
#include "gdpcast/format.hpp"

namespace gdpcast::tuning {

namespace {

std::uint64_t splitmix(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t h, std::uint64_t v) noexcept { return splitmix(h ^ splitmix(v)); }

constexpr std::uint64_t kFinalFitSalt = 0xF17A1F17ULL;

auto config_key(const lstm::LstmConfig& c) {
    return std::tuple(c.epochs, c.recurrent_dropout, c.units, c.batch_size, c.l2_lambda);
}

TrialResult run_trial(const lstm::LstmConfig& config, std::span<const SupervisedWindow> windows,
                      const FoldPlan& plan, std::uint64_t base_seed) {
    TrialResult trial;
    trial.config = config;
    trial.seed = trial_seed(base_seed, config);
    trial.config.seed = trial.seed;
    const auto started = std::chrono::steady_clock::now();
    try {
        for (const auto& fold : plan) {
            const auto train_part = windows.subspan(fold.train.begin, fold.train.size());
            const auto val_part = windows.subspan(fold.validation.begin, fold.validation.size());
            const auto trained = lstm::train(trial.config, train_part);
            const auto predicted = trained.model.predict(val_part);
            std::vector<double> actual;
            actual.reserve(val_part.size());
            for (const auto& w : val_part) actual.push_back(w.target);
            const double score = eval::mse(actual, predicted);
            if (!std::isfinite(score)) throw std::runtime_error("non-finite validation MSE");
            trial.fold_mse.push_back(score);
        }
        double sum = 0.0;
        for (double s : trial.fold_mse) sum += s;
        trial.mean_mse = sum / static_cast<double>(trial.fold_mse.size());
        trial.ok = true;
    } catch (const std::exception& e) {
        trial.ok = false;
        trial.error = e.what();
        trial.mean_mse = std::nan("");
    }
    trial.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return trial;
}

}  // namespace

void LstmSearchSpace::validate() const {
    if (epochs.empty() || recurrent_dropout.empty() || units.empty() || batch_size.empty() ||
        l2_lambda.empty()) {
        throw std::invalid_argument("LSTM search space has an empty axis");
    }
}

std::size_t LstmSearchSpace::size() const noexcept {
    return epochs.size() * recurrent_dropout.size() * units.size() * batch_size.size() *
           l2_lambda.size();
}

std::vector<lstm::LstmConfig> LstmSearchSpace::configurations(const lstm::LstmConfig& base) const {
    validate();
    std::vector<lstm::LstmConfig> out;
    out.reserve(size());
    for (int e : epochs)
        for (double r : recurrent_dropout)
            for (int u : units)
                for (int b : batch_size)
                    for (double l2 : l2_lambda) {
                        auto c = base;
                        c.epochs = e;
                        c.recurrent_dropout = r;
                        c.units = u;
                        c.batch_size = b;
                        c.l2_lambda = l2;
                        out.push_back(c);
                    }
    return out;
}

FoldPlan cv_splits(std::size_t n_windows, int k) {
    if (k < 1) throw std::invalid_argument("cv_splits: k must be >= 1");
    const auto blocks = static_cast<std::size_t>(k) + 1;
    if (n_windows < 2 * blocks) {
        throw std::invalid_argument("cv_splits: " + std::to_string(n_windows) +
                                    " windows too few for " + std::to_string(k) + " folds");
    }
    const std::size_t base = n_windows / blocks;
    const std::size_t extra = n_windows % blocks;
    std::vector<std::size_t> bounds{0};
    for (std::size_t b = 0; b < blocks; ++b) bounds.push_back(bounds.back() + base + (b < extra ? 1 : 0));

    FoldPlan plan;
    for (std::size_t i = 1; i <= static_cast<std::size_t>(k); ++i) {
        plan.push_back(Fold{IndexRange{0, bounds[i]}, IndexRange{bounds[i], bounds[i + 1]}});
    }
    return plan;
}

std::uint64_t trial_seed(std::uint64_t base_seed, const lstm::LstmConfig& c) noexcept {
    std::uint64_t h = splitmix(base_seed);
    h = combine(h, static_cast<std::uint64_t>(c.epochs));
    h = combine(h, std::bit_cast<std::uint64_t>(c.recurrent_dropout));
    h = combine(h, static_cast<std::uint64_t>(c.units));
    h = combine(h, static_cast<std::uint64_t>(c.batch_size));
    h = combine(h, std::bit_cast<std::uint64_t>(c.l2_lambda));
    h = combine(h, static_cast<std::uint64_t>(c.lookback));
    h = combine(h, std::bit_cast<std::uint64_t>(c.learning_rate));
    h = combine(h, static_cast<std::uint64_t>(c.activation));
    h = combine(h, c.standardize ? 1U : 0U);
    return h;
}

SearchResult run_lstm_search(const std::vector<lstm::LstmConfig>& configs,
                             std::span<const SupervisedWindow> windows, const SearchOptions& options) {
    if (configs.empty()) throw std::invalid_argument("LSTM search: no configurations");
    const auto plan = cv_splits(windows.size(), options.folds);

    SearchResult result;
    result.ledger.resize(configs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            result.ledger[i] = run_trial(configs[i], windows, plan, options.base_seed);
        }
    };
    const int n_threads = std::clamp(options.workers, 1, static_cast<int>(configs.size()));
    if (n_threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    }

    result.best = select_best(result.ledger).config;
    return result;
}

SearchResult run_lstm_search(const LstmSearchSpace& space, const lstm::LstmConfig& base,
                             std::span<const SupervisedWindow> windows, const SearchOptions& options) {
    return run_lstm_search(space.configurations(base), windows, options);
}

const TrialResult& select_best(const std::vector<TrialResult>& ledger) {
    const TrialResult* best = nullptr;
    for (const auto& t : ledger) {
        if (!t.ok) continue;
        if (best == nullptr) {
            best = &t;
            continue;
        }
        const auto lhs = std::tuple(t.mean_mse, t.config.units, t.config.epochs);
        const auto rhs = std::tuple(best->mean_mse, best->config.units, best->config.epochs);
        if (lhs < rhs || (lhs == rhs && config_key(t.config) < config_key(best->config))) best = &t;
    }
    if (best == nullptr) throw std::runtime_error("LSTM search: every trial failed");
    return *best;
}

lstm::TrainResult final_fit(const lstm::LstmConfig& best, std::span<const SupervisedWindow> windows,
                            std::uint64_t base_seed) {
    auto config = best;
    config.seed = combine(trial_seed(base_seed, best), kFinalFitSalt);
    return lstm::train(config, windows);
}

void write_ledger_csv(std::ostream& out, const std::vector<TrialResult>& ledger) {
    std::size_t folds = 0;
    for (const auto& t : ledger) folds = std::max(folds, t.fold_mse.size());
    out << "epochs,recurrent_dropout,units,batch_size,l2_lambda";
    for (std::size_t f = 1; f <= folds; ++f) out << ",fold" << f << "_mse";
    out << ",mean_mse,status,seconds,seed\n";
    for (const auto& t : ledger) {
        out << t.config.epochs << ',' << format_double(t.config.recurrent_dropout) << ','
            << t.config.units << ',' << t.config.batch_size << ','
            << format_double(t.config.l2_lambda);
        for (std::size_t f = 0; f < folds; ++f) {
            out << ',';
            if (f < t.fold_mse.size()) out << format_double(t.fold_mse[f]);
        }
        out << ',';
        if (t.ok) out << format_double(t.mean_mse);
        out << ',' << (t.ok ? "ok" : "failed") << ',' << format_double(t.seconds) << ',' << t.seed
            << '\n';
    }
}

}  // namespace gdpcast::tuning
