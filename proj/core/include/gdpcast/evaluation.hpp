#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace gdpcast::eval {

double mse(std::span<const double> actual, std::span<const double> predicted);
double mae(std::span<const double> actual, std::span<const double> predicted);
/// Percent. Throws if any actual value is zero.
double mape(std::span<const double> actual, std::span<const double> predicted);

struct MetricsReport {
    double mse = 0.0;
    double mae = 0.0;
    double mape = 0.0;  // percent
    std::size_t n = 0;
};

MetricsReport metrics(std::span<const double> actual, std::span<const double> predicted);

struct ComparisonReport {
    std::vector<double> actual;
    std::map<std::string, std::vector<double>> predictions;
    std::map<std::string, MetricsReport> models;  // ordered by name
};

ComparisonReport compare(std::span<const double> actual,
                         const std::map<std::string, std::vector<double>>& predictions);

void to_json(nlohmann::json& j, const MetricsReport& m);
void to_json(nlohmann::json& j, const ComparisonReport& r);

/// Metric rows (MAPE, MAE, MSE) by model columns, aligned.
std::string format_table(const ComparisonReport& report);

}  // namespace gdpcast::eval
