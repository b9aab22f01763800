#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

namespace gdpcast {

/// Deterministic terms in the Dickey-Fuller regression.
enum class AdfSpec { NoConstant, Constant, ConstantTrend };

std::string_view to_string(AdfSpec spec) noexcept;
/// Accepts "none"/"no-constant", "constant"/"c", "trend"/"constant+trend"/"ct".
std::optional<AdfSpec> parse_adf_spec(std::string_view text) noexcept;

struct AdfOptions {
    AdfSpec spec = AdfSpec::Constant;
    /// Upper bound for the lag search; defaults to floor(12 (n/100)^(1/4)).
    std::optional<int> max_lag;
    /// When false, exactly `max_lag` lags are used (no AIC search).
    bool select_lag = true;
};

struct AdfResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int lags = 0;
    AdfSpec spec = AdfSpec::Constant;
    std::size_t n_effective = 0;
};

/// Schwert upper bound floor(12 (n/100)^0.25).
int schwert_max_lag(std::size_t n) noexcept;

/// Augmented Dickey-Fuller test. Lag count is chosen by minimum AIC over
/// 0..max_lag on a common estimation sample, then the test regression is
/// re-run on all available rows for that lag.
AdfResult adf_test(std::span<const double> series, const AdfOptions& options = {});

/// Asymptotic Dickey-Fuller distribution function by monotone interpolation
/// of the tabulated quantiles. Clamped to [0.001, 0.999] outside the table.
double df_pvalue(double statistic, AdfSpec spec) noexcept;

void to_json(nlohmann::json& j, const AdfResult& result);

}  // namespace gdpcast
