#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gdpcast/lstm.hpp"
#include "gdpcast/series.hpp"

namespace gdpcast::tuning {

/// Grid axes. Defaults are the full 3 x 4 x 3 x 3 x 3 = 324 grid.
struct LstmSearchSpace {
    std::vector<int> epochs{250, 500, 1000};
    std::vector<double> recurrent_dropout{0.0, 0.1, 0.2, 0.3};
    std::vector<int> units{250, 500, 1000};
    std::vector<int> batch_size{1, 4, 8};
    std::vector<double> l2_lambda{0.01, 0.02, 0.03};

    void validate() const;
    [[nodiscard]] std::size_t size() const noexcept;
    /// Cartesian product in axis order (epochs outermost, l2 innermost);
    /// the remaining fields come from `base`.
    [[nodiscard]] std::vector<lstm::LstmConfig> configurations(const lstm::LstmConfig& base) const;
};

/// Half-open index range.
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    [[nodiscard]] std::size_t size() const noexcept { return end - begin; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct Fold {
    IndexRange train;
    IndexRange validation;
    friend bool operator==(const Fold&, const Fold&) = default;
};

using FoldPlan = std::vector<Fold>;

/// Expanding-window split: indices are cut into k+1 nearly equal blocks
/// (earlier blocks take the remainder); fold i trains on blocks 1..i and
/// validates on block i+1. Requires n >= 2 (k + 1).
FoldPlan cv_splits(std::size_t n_windows, int k);

struct TrialResult {
    lstm::LstmConfig config;
    std::vector<double> fold_mse;
    double mean_mse = 0.0;
    double seconds = 0.0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
};

/// Seed bound to the configuration's values, not its position in the grid.
std::uint64_t trial_seed(std::uint64_t base_seed, const lstm::LstmConfig& config) noexcept;

struct SearchOptions {
    int folds = 3;
    int workers = 1;
    std::uint64_t base_seed = 42;
};

struct SearchResult {
    lstm::LstmConfig best;
    std::vector<TrialResult> ledger;  // one entry per configuration, input order
};

/// Cross-validates every configuration. Failed trials stay in the ledger and
/// are excluded from selection.
SearchResult run_lstm_search(const std::vector<lstm::LstmConfig>& configs,
                             std::span<const SupervisedWindow> windows, const SearchOptions& options);
SearchResult run_lstm_search(const LstmSearchSpace& space, const lstm::LstmConfig& base,
                             std::span<const SupervisedWindow> windows, const SearchOptions& options);

/// Minimum mean validation MSE; ties go to fewer units, fewer epochs, then
/// the lexicographically smaller configuration. Throws if no trial succeeded.
const TrialResult& select_best(const std::vector<TrialResult>& ledger);

/// Retrains `best` on all windows with a seed derived from `base_seed`.
lstm::TrainResult final_fit(const lstm::LstmConfig& best, std::span<const SupervisedWindow> windows,
                            std::uint64_t base_seed);

/// One row per trial: config axes, fold MSEs, mean, status, seconds.
void write_ledger_csv(std::ostream& out, const std::vector<TrialResult>& ledger);

}  // namespace gdpcast::tuning
