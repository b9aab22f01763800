#include "gdpcast/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gdpcast/error.hpp"

namespace gdpcast {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

void validate_periods(std::span<const Period> periods) {
    for (std::size_t i = 1; i < periods.size(); ++i) {
        const Period expected = periods[i - 1].next();
        if (periods[i] != expected) {
            if (periods[i] <= periods[i - 1]) {
                throw DataError("duplicate or out-of-order period " + periods[i].to_string());
            }
            throw DataError("gap at " + expected.to_string());
        }
    }
}

}  // namespace

std::optional<Period> Period::parse(std::string_view text) {
    text = trim(text);
    // YYYY-Qn
    if (text.size() != 7 || text[4] != '-' || text[5] != 'Q') return std::nullopt;
    int year = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + 4, year);
    if (ec != std::errc{} || ptr != text.data() + 4) return std::nullopt;
    const char q = text[6];
    if (q < '1' || q > '4') return std::nullopt;
    return Period{year, q - '0'};
}

Period Period::next() const noexcept { return advance(1); }

Period Period::advance(long quarters) const noexcept {
    const long index = static_cast<long>(year) * 4 + (quarter - 1) + quarters;
    const long y = index >= 0 ? index / 4 : (index - 3) / 4;
    return Period{static_cast<int>(y), static_cast<int>(index - y * 4) + 1};
}

std::string Period::to_string() const {
    std::ostringstream out;
    out << std::setw(4) << std::setfill('0') << year << "-Q" << quarter;
    return out.str();
}

TimeSeries::TimeSeries(std::vector<Period> periods, std::vector<double> values)
    : periods_(std::move(periods)), values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("time series must not be empty");
    if (periods_.size() != values_.size()) {
        throw std::invalid_argument("time series periods and values differ in length");
    }
    validate_periods(periods_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DataError("non-finite value at " + periods_[i].to_string());
        }
    }
}

namespace {

std::vector<Period> consecutive_periods(Period start, std::size_t n) {
    std::vector<Period> periods;
    periods.reserve(n);
    for (std::size_t i = 0; i < n; ++i) periods.push_back(start.advance(static_cast<long>(i)));
    return periods;
}

}  // namespace

// Copies `values`: a move could run before size() is read (unspecified argument order).
TimeSeries::TimeSeries(Period start, std::vector<double> values)
    : TimeSeries(consecutive_periods(start, values.size()), std::vector<double>(values)) {}

TimeSeries TimeSeries::slice(std::size_t begin, std::size_t end) const {
    if (begin >= end || end > size()) throw std::out_of_range("invalid time series slice");
    return TimeSeries(std::vector<Period>(periods_.begin() + begin, periods_.begin() + end),
                      std::vector<double>(values_.begin() + begin, values_.begin() + end));
}

TimeSeries parse_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    std::vector<Period> periods;
    std::vector<double> values;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view row = line;
        if (line_no == 1 && row.starts_with("\xEF\xBB\xBF")) row.remove_prefix(3);
        row = trim(row);
        if (row.empty()) continue;

        const auto comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
            throw DataError("expected two comma-separated fields", line_no);
        }
        const auto first = trim(row.substr(0, comma));
        const auto second = trim(row.substr(comma + 1));

        if (!saw_header) {
            if (first != "period" || second != "value") {
                throw DataError("expected header 'period,value'", line_no);
            }
            saw_header = true;
            continue;
        }

        const auto period = Period::parse(first);
        if (!period) throw DataError("malformed period '" + std::string(first) + "'", line_no);
        const auto value = parse_double(second);
        if (!value) throw DataError("malformed value '" + std::string(second) + "'", line_no);
        if (!std::isfinite(*value)) throw DataError("non-finite value", line_no);

        if (!periods.empty()) {
            const Period expected = periods.back().next();
            if (*period <= periods.back()) {
                throw DataError("duplicate or out-of-order period " + period->to_string(), line_no);
            }
            if (*period != expected) {
                throw DataError("gap at " + expected.to_string(), line_no);
            }
        }
        periods.push_back(*period);
        values.push_back(*value);
    }

    if (!saw_header) throw DataError("missing header 'period,value'");
    if (values.size() < 2) {
        throw DataError("series has " + std::to_string(values.size()) +
                        " observations; length < 2");
    }
    return TimeSeries(std::move(periods), std::move(values));
}

TimeSeries load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    try {
        return parse_csv(in);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

DescriptiveStats describe(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 4) throw std::invalid_argument("describe needs at least 4 observations");

    DescriptiveStats out;
    out.n = n;
    const double nd = static_cast<double>(n);
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / nd;

    double ss = 0.0;
    for (double x : values) ss += (x - out.mean) * (x - out.mean);
    out.std_dev = std::sqrt(ss / (nd - 1.0));
    out.standard_error = out.std_dev / std::sqrt(nd);

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    out.min = sorted.front();
    out.max = sorted.back();
    out.range = out.max - out.min;
    out.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    if (out.std_dev > 0.0) {
        double m3 = 0.0;
        double m4 = 0.0;
        for (double x : values) {
            const double z = (x - out.mean) / out.std_dev;
            m3 += z * z * z;
            m4 += z * z * z * z;
        }
        out.skewness = nd / ((nd - 1.0) * (nd - 2.0)) * m3;
        out.excess_kurtosis = nd * (nd + 1.0) / ((nd - 1.0) * (nd - 2.0) * (nd - 3.0)) * m4 -
                              3.0 * (nd - 1.0) * (nd - 1.0) / ((nd - 2.0) * (nd - 3.0));
    }
    return out;
}

void to_json(nlohmann::json& j, const DescriptiveStats& s) {
    auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    j = nlohmann::json{{"n", s.n},
                       {"mean", s.mean},
                       {"standard_error", s.standard_error},
                       {"median", s.median},
                       {"std_dev", s.std_dev},
                       {"excess_kurtosis", opt(s.excess_kurtosis)},
                       {"skewness", opt(s.skewness)},
                       {"range", s.range},
                       {"min", s.min},
                       {"max", s.max}};
}

std::string format_table(const DescriptiveStats& s) {
    std::ostringstream out;
    out << std::setprecision(9);
    auto row = [&](std::string_view name, const std::optional<double>& v) {
        out << std::left << std::setw(20) << name;
        if (v) {
            out << *v;
        } else {
            out << "undefined";
        }
        out << '\n';
    };
    row("Mean", s.mean);
    row("Standard Error", s.standard_error);
    row("Median", s.median);
    row("Standard Deviation", s.std_dev);
    row("Kurtosis", s.excess_kurtosis);
    row("Skewness", s.skewness);
    row("Range", s.range);
    row("Minimum", s.min);
    row("Maximum", s.max);
    row("Count", static_cast<double>(s.n));
    return out.str();
}

std::vector<double> differencing_polynomial(int d, int seasonal_d, int season) {
    if (d < 0 || seasonal_d < 0) throw std::invalid_argument("differencing orders must be >= 0");
    if (season < 1) throw std::invalid_argument("season length must be >= 1");
    std::vector<double> poly{1.0};
    auto multiply = [&poly](int lag) {
        std::vector<double> next(poly.size() + static_cast<std::size_t>(lag), 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + static_cast<std::size_t>(lag)] -= poly[i];
        }
        poly = std::move(next);
    };
    for (int i = 0; i < d; ++i) multiply(1);
    for (int i = 0; i < seasonal_d; ++i) multiply(season);
    return std::vector<double>(poly.begin() + 1, poly.end());
}

std::vector<double> difference(std::span<const double> values, int d, int seasonal_d,
                               int season) {
    if (d < 0 || seasonal_d < 0) throw std::invalid_argument("differencing orders must be >= 0");
    if (season < 1) throw std::invalid_argument("season length must be >= 1");
    const std::size_t lost = static_cast<std::size_t>(d + seasonal_d * season);
    if (values.size() <= lost) {
        throw std::invalid_argument("series of length " + std::to_string(values.size()) +
                                    " too short for differencing orders");
    }
    std::vector<double> out(values.begin(), values.end());
    auto apply = [&out](std::size_t lag) {
        std::vector<double> next(out.size() - lag);
        for (std::size_t t = lag; t < out.size(); ++t) next[t - lag] = out[t] - out[t - lag];
        out = std::move(next);
    };
    for (int i = 0; i < d; ++i) apply(1);
    for (int i = 0; i < seasonal_d; ++i) apply(static_cast<std::size_t>(season));
    return out;
}

std::vector<double> integrate_forecasts(std::span<const double> history,
                                        std::span<const double> diffs, int d, int seasonal_d,
                                        int season) {
    const auto poly = differencing_polynomial(d, seasonal_d, season);
    const std::size_t order = poly.size();
    if (history.size() < order) {
        throw std::invalid_argument("integration needs " + std::to_string(order) +
                                    " history values, got " + std::to_string(history.size()));
    }
    // y_t = w_t - sum_k c_k y_{t-k}
    std::vector<double> extended(history.end() - static_cast<std::ptrdiff_t>(order), history.end());
    std::vector<double> out;
    out.reserve(diffs.size());
    for (double w : diffs) {
        double y = w;
        const std::size_t t = extended.size();
        for (std::size_t k = 1; k <= order; ++k) y -= poly[k - 1] * extended[t - k];
        extended.push_back(y);
        out.push_back(y);
    }
    return out;
}

std::pair<TimeSeries, TimeSeries> split_holdout(const TimeSeries& series, std::size_t h) {
    if (h == 0 || h >= series.size()) {
        throw std::invalid_argument("holdout length " + std::to_string(h) +
                                    " must be in [1, " + std::to_string(series.size() - 1) + "]");
    }
    const std::size_t cut = series.size() - h;
    return {series.slice(0, cut), series.slice(cut, series.size())};
}

std::vector<SupervisedWindow> make_windows(std::span<const double> values, std::size_t lookback) {
    if (lookback < 1) throw std::invalid_argument("lookback must be >= 1");
    if (values.size() <= lookback) {
        throw std::invalid_argument("series of length " + std::to_string(values.size()) +
                                    " too short for lookback " + std::to_string(lookback));
    }
    std::vector<SupervisedWindow> windows;
    windows.reserve(values.size() - lookback);
    for (std::size_t i = 0; i + lookback < values.size(); ++i) {
        windows.push_back(SupervisedWindow{
            std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(i),
                                values.begin() + static_cast<std::ptrdiff_t>(i + lookback)),
            values[i + lookback], i + lookback});
    }
    return windows;
}

}  // namespace gdpcast
