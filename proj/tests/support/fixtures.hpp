#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

// Simulation fixtures shared by the unit suites and the acceptance binary.
namespace fixtures {

inline std::vector<double> gaussian(std::size_t n, std::uint64_t seed, double sd = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, sd);
    std::vector<double> out(n);
    for (auto& v : out) v = z(rng);
    return out;
}

inline std::vector<double> random_walk(std::size_t n, std::uint64_t seed) {
    auto e = gaussian(n, seed);
    std::vector<double> y(n);
    double level = 0.0;
    for (std::size_t t = 0; t < n; ++t) y[t] = level += e[t];
    return y;
}

// y_t = phi * y_{t-lag} + e_t, with `burn` discarded start-up draws.
inline std::vector<double> ar_lag(std::size_t n, double phi, int lag, std::uint64_t seed,
                                  std::size_t burn = 100) {
    auto e = gaussian(n + burn, seed);
    std::vector<double> y(n + burn, 0.0);
    for (std::size_t t = 0; t < y.size(); ++t) {
        y[t] = e[t] + (t >= static_cast<std::size_t>(lag) ? phi * y[t - lag] : 0.0);
    }
    return {y.begin() + static_cast<std::ptrdiff_t>(burn), y.end()};
}

inline std::vector<double> ramp(std::size_t n, double start = 1.0) {
    std::vector<double> y(n);
    for (std::size_t t = 0; t < n; ++t) y[t] = start + static_cast<double>(t);
    return y;
}

// Trend plus a fixed quarterly pattern plus small seeded noise.
inline std::vector<double> ramp_seasonal(std::size_t n, std::uint64_t seed = 7) {
    static constexpr double kPattern[4] = {-6.0, 2.0, 7.0, -3.0};
    auto e = gaussian(n, seed, 0.25);
    std::vector<double> y(n);
    for (std::size_t t = 0; t < n; ++t) {
        y[t] = 100.0 + 1.5 * static_cast<double>(t) + kPattern[t % 4] + e[t];
    }
    return y;
}

inline double rel_err(double a, double b, double floor = 1e-300) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace fixtures
