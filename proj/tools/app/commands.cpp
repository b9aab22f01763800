#include "commands.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "gdpcast/format.hpp"
#include "gdpcast/lstm.hpp"
#include "gdpcast/sarima.hpp"
#include "gdpcast/tuning.hpp"

#ifndef GDPCAST_VERSION
#define GDPCAST_VERSION "0.0.0"
#endif

namespace gdpcast::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kCvScheme = "expanding-window (rolling-origin) cross-validation";

template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string full(double v) { return format_double(v); }

TimeSeries load(const RunConfig& config) {
    return stage("load", [&] {
        if (config.data.empty()) throw std::invalid_argument("no --data file given");
        return load_csv(config.data);
    });
}

std::string report_name(const RunConfig& config) {
    return config.format == OutputFormat::Csv ? "report.csv" : "report.json";
}

std::string report_csv(const eval::ComparisonReport& report) {
    std::ostringstream out;
    out << "model,mse,mae,mape,n\n";
    for (const auto& [name, m] : report.models) {
        out << name << ',' << full(m.mse) << ',' << full(m.mae) << ',' << full(m.mape) << ','
            << m.n << '\n';
    }
    return out.str();
}

void write_report(const OutputStage& out, const RunConfig& config,
                  const eval::ComparisonReport& report) {
    out.write(report_name(config),
              config.format == OutputFormat::Csv ? report_csv(report) : dump(json(report)));
    out.write("report.txt", eval::format_table(report));
}

json manifest(const RunConfig& config, const std::string& command, const TimeSeries& series,
              const TimeSeries& train, const TimeSeries& test) {
    json run = config;
    run.erase("out");
    return json{{"tool_version", GDPCAST_VERSION},
                {"command", command},
                {"seed", config.seed},
                {"input_sha256", sha256_file(config.data)},
                {"run_config", std::move(run)},
                {"cv_scheme", kCvScheme},
                {"timestamps",
                 {{"data_first_period", series.first_period().to_string()},
                  {"data_last_period", series.last_period().to_string()},
                  {"train_last_period", train.last_period().to_string()},
                  {"test_first_period", test.first_period().to_string()}}}};
}

struct SarimaStage {
    sarima::AicSearchResult search;
    std::vector<double> forecast;
};

SarimaStage run_sarima(const TimeSeries& train, std::size_t h, const RunConfig& config,
                       std::ostream& log) {
    return stage("sarima", [&] {
        SarimaStage out;
        out.search = sarima::aic_search(train, config.sarima, config.workers);
        std::size_t skipped = 0;
        for (const auto& entry : out.search.table) {
            if (!entry.fit) {
                ++skipped;
                log << "sarima: skipped " << entry.order.to_string() << ": " << entry.error << '\n';
            }
        }
        log << "sarima: " << out.search.table.size() - skipped << " fits, best "
            << out.search.best.order.to_string() << " aic " << out.search.best.aic << '\n';
        out.forecast = sarima::forecast(out.search.best, train.values(), static_cast<int>(h));
        return out;
    });
}

struct LstmStage {
    std::vector<SupervisedWindow> windows;
    tuning::SearchResult search;
    lstm::TrainResult final;
    std::vector<double> forecast;
};

LstmStage run_lstm(const TimeSeries& train, std::size_t h, const RunConfig& config,
                   std::ostream& log) {
    LstmStage out;
    out.windows = stage("lstm-windows", [&] {
        return make_windows(train.values(), static_cast<std::size_t>(config.lookback));
    });
    out.search = stage("lstm-search", [&] {
        log << "lstm: " << config.lstm.size() << " configurations, " << config.folds
            << "-fold " << kCvScheme << '\n';
        tuning::SearchOptions options{config.folds, config.workers, config.seed};
        return tuning::run_lstm_search(config.lstm, config.lstm_base(), out.windows, options);
    });
    for (const auto& t : out.search.ledger) {
        if (!t.ok) log << "lstm: trial failed: " << t.error << '\n';
    }
    const auto& b = out.search.best;
    log << "lstm: best epochs=" << b.epochs << " dropout=" << b.recurrent_dropout
        << " units=" << b.units << " batch=" << b.batch_size << " l2=" << b.l2_lambda << '\n';
    out.final = stage("lstm-final-fit",
                      [&] { return tuning::final_fit(out.search.best, out.windows, config.seed); });
    out.forecast = stage("lstm-forecast", [&] {
        return lstm::forecast_recursive(out.final.model, train.values(), static_cast<int>(h));
    });
    return out;
}

void write_sarima_artifacts(const OutputStage& out, const SarimaStage& s) {
    std::ostringstream table;
    sarima::write_search_table_csv(table, s.search.table);
    out.write("sarima_search.csv", table.str());
    out.write("sarima_best.json", dump(json(s.search.best)));
}

void write_lstm_artifacts(const OutputStage& out, const LstmStage& l) {
    std::ostringstream ledger;
    tuning::write_ledger_csv(ledger, l.search.ledger);
    out.write("lstm_ledger.csv", ledger.str());
    out.write("lstm_model.json", dump(json(l.final.model)));
    std::ostringstream history;
    lstm::write_history_csv(history, l.final.history);
    out.write("train_history.csv", history.str());
}

std::string forecast_csv(const TimeSeries& test, const std::vector<double>& forecast) {
    std::ostringstream out;
    out << "period,actual,forecast\n";
    for (std::size_t i = 0; i < test.size(); ++i) {
        out << test.periods()[i].to_string() << ',' << full(test.values()[i]) << ','
            << full(forecast[i]) << '\n';
    }
    return out.str();
}

}  // namespace

OutputStage::OutputStage(fs::path out) : out_(std::move(out)) {
    if (out_.empty()) throw std::invalid_argument("no output directory given");
    staging_ = out_;
    staging_ += ".partial";
    fs::remove_all(staging_);
    fs::create_directories(staging_);
}

OutputStage::~OutputStage() {
    if (!committed_) {
        std::error_code ec;
        fs::remove_all(staging_, ec);
    }
}

fs::path OutputStage::file(const std::string& name) const { return staging_ / name; }

void OutputStage::write(const std::string& name, const std::string& contents) const {
    std::ofstream f(file(name), std::ios::binary);
    f << contents;
    f.close();
    if (!f) throw StageError("write", "cannot write " + file(name).string());
}

void OutputStage::commit() {
    fs::create_directories(out_);
    for (const auto& entry : fs::directory_iterator(staging_)) {
        fs::rename(entry.path(), out_ / entry.path().filename());
    }
    fs::remove_all(staging_);
    committed_ = true;
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("sha256 initialisation failed");
    }
    std::array<char, 1 << 16> buffer{};
    while (in) {
        in.read(buffer.data(), buffer.size());
        EVP_DigestUpdate(ctx, buffer.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest.data(), &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return hex.str();
}

DescriptiveStats cmd_describe(const RunConfig& config, std::ostream& log) {
    const auto series = load(config);
    const auto stats = stage("describe", [&] { return describe(series.values()); });
    const auto table = format_table(stats);
    log << table;
    if (config.out.empty()) {
        std::cout << dump(json(stats));
        return stats;
    }
    stage("write", [&] {
        OutputStage out(config.out);
        if (config.format == OutputFormat::Csv) {
            std::ostringstream csv;
            csv << "statistic,value\n";
            for (const auto& [key, value] : json(stats).items()) {
                csv << key << ',' << (value.is_null() ? std::string() : value.dump()) << '\n';
            }
            out.write("describe.csv", csv.str());
        } else {
            out.write("describe.json", dump(json(stats)));
        }
        out.write("describe.txt", table);
        out.commit();
    });
    return stats;
}

AdfResult cmd_adf(const RunConfig& config, std::ostream& log) {
    const auto series = load(config);
    const auto result = stage("adf", [&] {
        return adf_test(series.values(), AdfOptions{config.adf_spec, config.adf_max_lag, true});
    });
    log << "adf: statistic " << result.statistic << ", p-value " << result.p_value << ", lags "
        << result.lags << " (" << to_string(result.spec) << ")\n";
    if (config.out.empty()) {
        std::cout << dump(json(result));
        return result;
    }
    stage("write", [&] {
        OutputStage out(config.out);
        if (config.format == OutputFormat::Csv) {
            out.write("adf.csv", "statistic,p_value,lags,spec,n_effective\n" + full(result.statistic) +
                                     ',' + full(result.p_value) + ',' + std::to_string(result.lags) +
                                     ',' + std::string(to_string(result.spec)) + ',' +
                                     std::to_string(result.n_effective) + '\n');
        } else {
            out.write("adf.json", dump(json(result)));
        }
        out.commit();
    });
    return result;
}

void cmd_sarima(const RunConfig& config, std::ostream& log) {
    stage("config", [&] { config.validate(); });
    const auto series = load(config);
    const auto [train, test] = stage("split", [&] { return split_holdout(series, config.holdout); });
    OutputStage out(config.out);
    const auto s = run_sarima(train, test.size(), config, log);
    const auto report = stage("evaluate", [&] {
        return eval::compare(test.values(), {{"SARIMA", s.forecast}});
    });
    log << eval::format_table(report);
    stage("write", [&] {
        write_sarima_artifacts(out, s);
        out.write("sarima_forecast.csv", forecast_csv(test, s.forecast));
        write_report(out, config, report);
        out.write("manifest.json", dump(manifest(config, "sarima", series, train, test)));
        out.commit();
    });
}

void cmd_lstm(const RunConfig& config, std::ostream& log) {
    stage("config", [&] { config.validate(); });
    const auto series = load(config);
    const auto [train, test] = stage("split", [&] { return split_holdout(series, config.holdout); });
    OutputStage out(config.out);
    const auto l = run_lstm(train, test.size(), config, log);
    const auto report = stage("evaluate", [&] {
        return eval::compare(test.values(), {{"LSTM", l.forecast}});
    });
    log << eval::format_table(report);
    stage("write", [&] {
        write_lstm_artifacts(out, l);
        out.write("lstm_forecast.csv", forecast_csv(test, l.forecast));
        write_report(out, config, report);
        out.write("manifest.json", dump(manifest(config, "lstm", series, train, test)));
        out.commit();
    });
}

eval::ComparisonReport cmd_compare(const RunConfig& config, std::ostream& log) {
    stage("config", [&] { config.validate(); });
    const auto series = load(config);
    const auto [train, test] = stage("split", [&] { return split_holdout(series, config.holdout); });
    OutputStage out(config.out);

    const auto s = run_sarima(train, test.size(), config, log);
    const auto l = run_lstm(train, test.size(), config, log);
    const auto report = stage("evaluate", [&] {
        return eval::compare(test.values(), {{"LSTM", l.forecast}, {"SARIMA", s.forecast}});
    });
    log << eval::format_table(report);

    stage("write", [&] {
        write_sarima_artifacts(out, s);
        write_lstm_artifacts(out, l);
        write_report(out, config, report);

        // Actual vs predicted for every input period: in-sample one-step LSTM
        // fits on the training rows, recursive forecasts on the test rows.
        const auto fitted = l.final.model.predict(l.windows);
        std::ostringstream fig;
        fig << "period,actual,lstm,sarima,split\n";
        for (std::size_t i = 0; i < series.size(); ++i) {
            fig << series.periods()[i].to_string() << ',' << full(series.values()[i]) << ',';
            if (i < train.size()) {
                const auto lookback = static_cast<std::size_t>(config.lookback);
                if (i >= lookback) fig << full(fitted[i - lookback]);
                fig << ",,train\n";
            } else {
                const std::size_t k = i - train.size();
                fig << full(l.forecast[k]) << ',' << full(s.forecast[k]) << ",test\n";
            }
        }
        out.write("figure2.csv", fig.str());
        out.write("manifest.json", dump(manifest(config, "compare", series, train, test)));
        out.commit();
    });
    return report;
}

}  // namespace gdpcast::app
