#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace gdpcast {

/// A calendar quarter, e.g. 1995-Q1.
struct Period {
    int year = 0;
    int quarter = 1;  // 1..4

    /// Parses `YYYY-Qn`. Returns nullopt on any deviation from that format.
    static std::optional<Period> parse(std::string_view text);

    [[nodiscard]] Period next() const noexcept;
    [[nodiscard]] Period advance(long quarters) const noexcept;
    [[nodiscard]] std::string to_string() const;

    friend auto operator<=>(const Period&, const Period&) = default;
};

/// Ordered, gap-free quarterly observations.
///
/// Invariants enforced at construction: at least one observation, periods
/// consecutive, every value finite. Ingestion additionally requires two
/// observations (see load_csv).
class TimeSeries {
public:
    TimeSeries(std::vector<Period> periods, std::vector<double> values);
    TimeSeries(Period start, std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<const Period> periods() const noexcept { return periods_; }
    [[nodiscard]] Period first_period() const noexcept { return periods_.front(); }
    [[nodiscard]] Period last_period() const noexcept { return periods_.back(); }

    /// Observations [begin, end).
    [[nodiscard]] TimeSeries slice(std::size_t begin, std::size_t end) const;

private:
    std::vector<Period> periods_;
    std::vector<double> values_;
};

/// Reads a `period,value` CSV. Throws DataError with the offending line.
TimeSeries load_csv(const std::filesystem::path& path);
TimeSeries parse_csv(std::istream& in);

/// Sample statistics with spreadsheet (bias-corrected) conventions.
struct DescriptiveStats {
    std::size_t n = 0;
    double mean = 0.0;
    double standard_error = 0.0;
    double median = 0.0;
    double std_dev = 0.0;
    // Empty when the standard deviation is zero.
    std::optional<double> excess_kurtosis;
    std::optional<double> skewness;
    double range = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Requires at least four observations.
DescriptiveStats describe(std::span<const double> values);

void to_json(nlohmann::json& j, const DescriptiveStats& stats);

/// Spreadsheet-style two-column block (statistic name, value).
std::string format_table(const DescriptiveStats& stats);

/// Applies (1-B)^d then (1-B^s)^D. Output has `values.size() - d - D*s` entries.
std::vector<double> difference(std::span<const double> values, int d, int seasonal_d, int season);

/// Inverse of difference(): given the original series up to time T and
/// forecasts of the differenced series for T+1.., rebuilds the forecasts on
/// the original scale. Needs at least d + D*s trailing history values.
std::vector<double> integrate_forecasts(std::span<const double> history,
                                        std::span<const double> diffs, int d, int seasonal_d,
                                        int season);

/// Coefficients c_1..c_m of (1-B)^d (1-B^s)^D = 1 + sum c_k B^k.
std::vector<double> differencing_polynomial(int d, int seasonal_d, int season);

/// Last `h` observations become the test part.
std::pair<TimeSeries, TimeSeries> split_holdout(const TimeSeries& series, std::size_t h);

struct SupervisedWindow {
    std::vector<double> inputs;
    double target = 0.0;
    std::size_t target_index = 0;
};

/// Sliding windows of `lookback` inputs followed by their next value.
std::vector<SupervisedWindow> make_windows(std::span<const double> values, std::size_t lookback);

}  // namespace gdpcast
