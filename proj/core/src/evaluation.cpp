#include "gdpcast/evaluation.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gdpcast::eval {

namespace {

void check(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) {
        throw std::invalid_argument("metric inputs differ in length (" +
                                    std::to_string(actual.size()) + " vs " +
                                    std::to_string(predicted.size()) + ")");
    }
    if (actual.empty()) throw std::invalid_argument("metric inputs are empty");
}

}  // namespace

double mse(std::span<const double> actual, std::span<const double> predicted) {
    check(actual, predicted);
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = actual[i] - predicted[i];
        s += e * e;
    }
    return s / static_cast<double>(actual.size());
}

double mae(std::span<const double> actual, std::span<const double> predicted) {
    check(actual, predicted);
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) s += std::abs(actual[i] - predicted[i]);
    return s / static_cast<double>(actual.size());
}

double mape(std::span<const double> actual, std::span<const double> predicted) {
    check(actual, predicted);
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0) {
            throw std::invalid_argument("MAPE undefined: actual value at position " +
                                        std::to_string(i) + " is zero");
        }
        s += std::abs(actual[i] - predicted[i]) / std::abs(actual[i]);
    }
    return 100.0 * s / static_cast<double>(actual.size());
}

MetricsReport metrics(std::span<const double> actual, std::span<const double> predicted) {
    return MetricsReport{mse(actual, predicted), mae(actual, predicted), mape(actual, predicted),
                         actual.size()};
}

ComparisonReport compare(std::span<const double> actual,
                         const std::map<std::string, std::vector<double>>& predictions) {
    ComparisonReport out;
    out.actual.assign(actual.begin(), actual.end());
    for (const auto& [name, pred] : predictions) {
        if (pred.size() != actual.size()) {
            throw std::invalid_argument("model '" + name + "' has " + std::to_string(pred.size()) +
                                        " predictions for " + std::to_string(actual.size()) +
                                        " actual values");
        }
        out.models[name] = metrics(actual, pred);
    }
    out.predictions = predictions;
    return out;
}

void to_json(nlohmann::json& j, const MetricsReport& m) {
    j = nlohmann::json{{"mse", m.mse}, {"mae", m.mae}, {"mape", m.mape}, {"n", m.n}};
}

void to_json(nlohmann::json& j, const ComparisonReport& r) {
    j = nlohmann::json{{"actual", r.actual}, {"predictions", r.predictions}, {"metrics", r.models}};
}

std::string format_table(const ComparisonReport& report) {
    constexpr int kLabel = 22;
    constexpr int kColumn = 16;
    std::ostringstream out;
    out << std::left << std::setw(kLabel) << "Performance metrics";
    for (const auto& [name, _] : report.models) out << std::right << std::setw(kColumn) << name;
    out << '\n';

    auto row = [&](const char* label, auto value_of) {
        out << std::left << std::setw(kLabel) << label;
        for (const auto& [_, m] : report.models) out << std::right << std::setw(kColumn) << value_of(m);
        out << '\n';
    };
    row("MAPE", [](const MetricsReport& m) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(2) << m.mape << '%';
        return s.str();
    });
    row("MAE", [](const MetricsReport& m) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(0) << m.mae;
        return s.str();
    });
    row("MSE", [](const MetricsReport& m) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(0) << m.mse;
        return s.str();
    });
    return out.str();
}

}  // namespace gdpcast::eval
