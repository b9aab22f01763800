#include "gdpcast/unitroot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gdpcast/linalg.hpp"

namespace gdpcast {

namespace {

constexpr std::array<double, 8> kProbabilities{0.01, 0.025, 0.05, 0.10, 0.90, 0.95, 0.975, 0.99};

// Asymptotic quantiles of the Dickey-Fuller t distribution (Fuller 1976).
constexpr std::array<double, 8> kQuantilesNone{-2.58, -2.23, -1.95, -1.62, 0.89, 1.28, 1.62, 2.00};
constexpr std::array<double, 8> kQuantilesConstant{-3.43, -3.12, -2.86, -2.57,
                                                   -0.44, -0.07, 0.23,  0.60};
constexpr std::array<double, 8> kQuantilesTrend{-3.96, -3.66, -3.41, -3.12,
                                                -1.25, -0.94, -0.66, -0.33};

constexpr double kPFloor = 0.001;
constexpr double kPCeiling = 0.999;

const std::array<double, 8>& quantiles(AdfSpec spec) noexcept {
    switch (spec) {
        case AdfSpec::NoConstant: return kQuantilesNone;
        case AdfSpec::ConstantTrend: return kQuantilesTrend;
        case AdfSpec::Constant: break;
    }
    return kQuantilesConstant;
}

int deterministic_terms(AdfSpec spec) noexcept {
    switch (spec) {
        case AdfSpec::NoConstant: return 0;
        case AdfSpec::Constant: return 1;
        case AdfSpec::ConstantTrend: return 2;
    }
    return 1;
}

struct Regression {
    linalg::OlsResult fit;
    std::size_t rows = 0;
    int regressors = 0;
    int gamma_index = 0;
};

// Rows t = first_row .. n-1 of  dy_t = [1] [t] y_{t-1} dy_{t-1} .. dy_{t-lags}.
Regression run_regression(std::span<const double> y, AdfSpec spec, int lags, std::size_t first_row) {
    const std::size_t n = y.size();
    const int det = deterministic_terms(spec);
    const int k = det + 1 + lags;
    const std::size_t rows = n - first_row;

    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), k);
    Eigen::VectorXd target(static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = first_row + r;
        const auto row = static_cast<Eigen::Index>(r);
        int col = 0;
        if (det >= 1) x(row, col++) = 1.0;
        if (det >= 2) x(row, col++) = static_cast<double>(t);
        x(row, col++) = y[t - 1];
        for (int j = 1; j <= lags; ++j) {
            const std::size_t u = t - static_cast<std::size_t>(j);
            x(row, col++) = y[u] - y[u - 1];
        }
        target(row) = y[t] - y[t - 1];
    }
    return Regression{linalg::ols(x, target), rows, k, det};
}

double gaussian_aic(const Regression& reg) {
    const double n = static_cast<double>(reg.rows);
    const double loglik = -0.5 * n * (std::log(2.0 * std::numbers::pi * reg.fit.ssr / n) + 1.0);
    return 2.0 * reg.regressors - 2.0 * loglik;
}

}  // namespace

std::string_view to_string(AdfSpec spec) noexcept {
    switch (spec) {
        case AdfSpec::NoConstant: return "no-constant";
        case AdfSpec::Constant: return "constant";
        case AdfSpec::ConstantTrend: return "constant+trend";
    }
    return "constant";
}

std::optional<AdfSpec> parse_adf_spec(std::string_view text) noexcept {
    if (text == "none" || text == "no-constant" || text == "n") return AdfSpec::NoConstant;
    if (text == "constant" || text == "c") return AdfSpec::Constant;
    if (text == "trend" || text == "constant+trend" || text == "ct") return AdfSpec::ConstantTrend;
    return std::nullopt;
}

int schwert_max_lag(std::size_t n) noexcept {
    return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

double df_pvalue(double statistic, AdfSpec spec) noexcept {
    const auto& q = quantiles(spec);
    const auto& p = kProbabilities;
    constexpr std::size_t last = kProbabilities.size() - 1;
    if (std::isnan(statistic)) return kPCeiling;

    auto line = [&](std::size_t i, double x) {
        return p[i] + (p[i + 1] - p[i]) * (x - q[i]) / (q[i + 1] - q[i]);
    };
    double value = 0.0;
    if (statistic <= q[0]) {
        value = line(0, statistic);
    } else if (statistic >= q[last]) {
        value = line(last - 1, statistic);
    } else {
        std::size_t i = 0;
        while (statistic > q[i + 1]) ++i;
        value = statistic == q[i + 1] ? p[i + 1] : line(i, statistic);
    }
    if (statistic == q[0]) value = p[0];
    if (statistic == q[last]) value = p[last];
    return std::clamp(value, kPFloor, kPCeiling);
}

AdfResult adf_test(std::span<const double> series, const AdfOptions& options) {
    const std::size_t n = series.size();
    const int max_lag = options.max_lag.value_or(schwert_max_lag(n));
    if (max_lag < 0) throw std::invalid_argument("adf_test: max_lag must be >= 0");
    if (n < static_cast<std::size_t>(max_lag) + 10) {
        throw std::invalid_argument("adf_test: series of length " + std::to_string(n) +
                                    " too short for max_lag " + std::to_string(max_lag));
    }
    for (double v : series) {
        if (!std::isfinite(v)) throw std::invalid_argument("adf_test: non-finite value");
    }

    int lags = max_lag;
    if (options.select_lag && max_lag > 0) {
        // Common sample so AIC values are comparable across lag counts.
        const std::size_t first_row = static_cast<std::size_t>(max_lag) + 1;
        double best_aic = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= max_lag; ++k) {
            const double aic = gaussian_aic(run_regression(series, options.spec, k, first_row));
            if (aic < best_aic) {
                best_aic = aic;
                lags = k;
            }
        }
    }

    const auto reg = run_regression(series, options.spec, lags, static_cast<std::size_t>(lags) + 1);
    AdfResult out;
    out.statistic = reg.fit.coefficients(reg.gamma_index) / reg.fit.std_errors(reg.gamma_index);
    out.p_value = df_pvalue(out.statistic, options.spec);
    out.lags = lags;
    out.spec = options.spec;
    out.n_effective = reg.rows;
    return out;
}

void to_json(nlohmann::json& j, const AdfResult& r) {
    j = nlohmann::json{{"statistic", r.statistic},
                       {"p_value", r.p_value},
                       {"lags", r.lags},
                       {"spec", std::string(to_string(r.spec))},
                       {"n_effective", r.n_effective}};
}

}  // namespace gdpcast
