#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>

#include <nlohmann/json_fwd.hpp>

#include "gdpcast/sarima.hpp"
#include "gdpcast/tuning.hpp"
#include "gdpcast/unitroot.hpp"

namespace gdpcast::app {

enum class OutputFormat { Json, Csv };

struct RunConfig {
    std::filesystem::path data;
    std::filesystem::path out;
    std::size_t holdout = 4;
    int lookback = 4;
    std::uint64_t seed = 42;
    bool scale = false;
    int workers = 1;
    OutputFormat format = OutputFormat::Json;

    sarima::OrderRanges sarima;
    tuning::LstmSearchSpace lstm;
    double learning_rate = 1e-3;
    int folds = 3;

    AdfSpec adf_spec = AdfSpec::Constant;
    std::optional<int> adf_max_lag;

    void validate() const;
    /// Fields shared by every trial of the LSTM grid.
    [[nodiscard]] lstm::LstmConfig lstm_base() const;
};

/// Keys mirror the command-line flags; missing keys keep their defaults.
RunConfig load_run_config(const std::filesystem::path& path);

void to_json(nlohmann::json& j, const RunConfig& config);
void from_json(const nlohmann::json& j, RunConfig& config);

}  // namespace gdpcast::app
