#include "run_config.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gdpcast::app {

void RunConfig::validate() const {
    if (holdout < 1) throw std::invalid_argument("holdout must be >= 1");
    if (lookback < 1) throw std::invalid_argument("lookback must be >= 1");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (folds < 1) throw std::invalid_argument("folds must be >= 1");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
    if (sarima.s < 1) throw std::invalid_argument("season length must be >= 1");
    lstm.validate();
}

lstm::LstmConfig RunConfig::lstm_base() const {
    lstm::LstmConfig base;
    base.lookback = lookback;
    base.learning_rate = learning_rate;
    base.standardize = scale;
    base.seed = seed;
    return base;
}

void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{
        {"data", c.data.generic_string()},
        {"out", c.out.generic_string()},
        {"holdout", c.holdout},
        {"lookback", c.lookback},
        {"seed", c.seed},
        {"scale", c.scale},
        {"workers", c.workers},
        {"format", c.format == OutputFormat::Csv ? "csv" : "json"},
        {"folds", c.folds},
        {"learning_rate", c.learning_rate},
        {"adf_spec", std::string(to_string(c.adf_spec))},
        {"adf_max_lag", c.adf_max_lag ? nlohmann::json(*c.adf_max_lag) : nlohmann::json(nullptr)},
        {"sarima",
         {{"p", c.sarima.p},
          {"d", c.sarima.d},
          {"q", c.sarima.q},
          {"P", c.sarima.P},
          {"D", c.sarima.D},
          {"Q", c.sarima.Q},
          {"s", c.sarima.s}}},
        {"lstm",
         {{"epochs", c.lstm.epochs},
          {"recurrent_dropout", c.lstm.recurrent_dropout},
          {"units", c.lstm.units},
          {"batch_size", c.lstm.batch_size},
          {"l2_lambda", c.lstm.l2_lambda}}}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
    if (j.contains("data")) c.data = j.at("data").get<std::string>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    c.holdout = j.value("holdout", c.holdout);
    c.lookback = j.value("lookback", c.lookback);
    c.seed = j.value("seed", c.seed);
    c.scale = j.value("scale", c.scale);
    c.workers = j.value("workers", c.workers);
    c.folds = j.value("folds", c.folds);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    if (j.contains("format")) {
        const auto f = j.at("format").get<std::string>();
        if (f == "json") {
            c.format = OutputFormat::Json;
        } else if (f == "csv") {
            c.format = OutputFormat::Csv;
        } else {
            throw std::invalid_argument("format must be json or csv, got '" + f + "'");
        }
    }
    if (j.contains("adf_spec")) {
        const auto text = j.at("adf_spec").get<std::string>();
        const auto spec = parse_adf_spec(text);
        if (!spec) throw std::invalid_argument("unknown ADF spec '" + text + "'");
        c.adf_spec = *spec;
    }
    if (j.contains("adf_max_lag") && !j.at("adf_max_lag").is_null()) {
        c.adf_max_lag = j.at("adf_max_lag").get<int>();
    }
    if (j.contains("sarima")) {
        const auto& s = j.at("sarima");
        c.sarima.p = s.value("p", c.sarima.p);
        c.sarima.d = s.value("d", c.sarima.d);
        c.sarima.q = s.value("q", c.sarima.q);
        c.sarima.P = s.value("P", c.sarima.P);
        c.sarima.D = s.value("D", c.sarima.D);
        c.sarima.Q = s.value("Q", c.sarima.Q);
        c.sarima.s = s.value("s", c.sarima.s);
    }
    if (j.contains("lstm")) {
        const auto& l = j.at("lstm");
        c.lstm.epochs = l.value("epochs", c.lstm.epochs);
        c.lstm.recurrent_dropout = l.value("recurrent_dropout", c.lstm.recurrent_dropout);
        c.lstm.units = l.value("units", c.lstm.units);
        c.lstm.batch_size = l.value("batch_size", c.lstm.batch_size);
        c.lstm.l2_lambda = l.value("l2_lambda", c.lstm.l2_lambda);
    }
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    RunConfig config;
    try {
        from_json(nlohmann::json::parse(in), config);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("config " + path.string() + ": " + e.what());
    }
    return config;
}

}  // namespace gdpcast::app
