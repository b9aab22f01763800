#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "app/commands.hpp"
#include "app/run_config.hpp"

namespace {

using gdpcast::app::OutputFormat;
using gdpcast::app::RunConfig;

// Raw flag values; only flags that were given override the config file.
struct Flags {
    std::string config;
    std::string data;
    std::string out;
    std::uint64_t seed = 0;
    std::size_t holdout = 0;
    int lookback = 0;
    bool scale = false;
    int workers = 0;
    std::string format;
    std::string spec;
    int max_lag = 0;
    int folds = 0;
    double learning_rate = 0.0;
    std::vector<int> epochs, units, batch;
    std::vector<double> dropout, l2;
    std::vector<int> sp, sd, sq, sP, sD, sQ;
    int season = 0;
};

void add_common(CLI::App& cmd, Flags& f) {
    cmd.add_option("--config", f.config, "JSON run configuration (flags override it)");
    cmd.add_option("--data", f.data, "input CSV with header period,value");
    cmd.add_option("--out", f.out, "output directory");
    cmd.add_option("--seed", f.seed, "base random seed (default 42)");
    cmd.add_option("--holdout", f.holdout, "number of final observations held out (default 4)");
    cmd.add_option("--lookback", f.lookback, "LSTM input window length (default 4)");
    cmd.add_flag("--scale", f.scale, "z-score LSTM inputs using the training split");
    cmd.add_option("--workers", f.workers, "parallel trials / fits (default 1)");
    cmd.add_option("--format", f.format, "primary report format")->check(CLI::IsMember({"json", "csv"}));
}

void add_sarima(CLI::App& cmd, Flags& f) {
    cmd.add_option("--sarima-p", f.sp, "AR orders to search")->delimiter(',');
    cmd.add_option("--sarima-d", f.sd, "differencing orders to search")->delimiter(',');
    cmd.add_option("--sarima-q", f.sq, "MA orders to search")->delimiter(',');
    cmd.add_option("--sarima-P", f.sP, "seasonal AR orders to search")->delimiter(',');
    cmd.add_option("--sarima-D", f.sD, "seasonal differencing orders to search")->delimiter(',');
    cmd.add_option("--sarima-Q", f.sQ, "seasonal MA orders to search")->delimiter(',');
    cmd.add_option("--season", f.season, "season length (default 4)");
}

void add_lstm(CLI::App& cmd, Flags& f) {
    cmd.add_option("--epochs", f.epochs, "training epochs to search")->delimiter(',');
    cmd.add_option("--units", f.units, "LSTM widths to search")->delimiter(',');
    cmd.add_option("--dropout", f.dropout, "recurrent dropout rates to search")->delimiter(',');
    cmd.add_option("--batch", f.batch, "batch sizes to search")->delimiter(',');
    cmd.add_option("--l2", f.l2, "dense-layer L2 weights to search")->delimiter(',');
    cmd.add_option("--lr", f.learning_rate, "Adam learning rate (default 0.001)");
    cmd.add_option("--folds", f.folds, "cross-validation folds (default 3)");
}

RunConfig resolve(const CLI::App& cmd, const Flags& f) {
    RunConfig c = f.config.empty() ? RunConfig{} : gdpcast::app::load_run_config(f.config);
    auto given = [&cmd](const char* name) {
        try {
            return cmd.get_option(name)->count() > 0;
        } catch (const CLI::OptionNotFound&) {
            return false;
        }
    };
    if (given("--data")) c.data = f.data;
    if (given("--out")) c.out = f.out;
    if (given("--seed")) c.seed = f.seed;
    if (given("--holdout")) c.holdout = f.holdout;
    if (given("--lookback")) c.lookback = f.lookback;
    if (given("--scale")) c.scale = f.scale;
    if (given("--workers")) c.workers = f.workers;
    if (given("--format")) c.format = f.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    if (given("--spec")) c.adf_spec = *gdpcast::parse_adf_spec(f.spec);
    if (given("--max-lag")) c.adf_max_lag = f.max_lag;
    if (given("--folds")) c.folds = f.folds;
    if (given("--lr")) c.learning_rate = f.learning_rate;
    if (given("--epochs")) c.lstm.epochs = f.epochs;
    if (given("--units")) c.lstm.units = f.units;
    if (given("--dropout")) c.lstm.recurrent_dropout = f.dropout;
    if (given("--batch")) c.lstm.batch_size = f.batch;
    if (given("--l2")) c.lstm.l2_lambda = f.l2;
    if (given("--sarima-p")) c.sarima.p = f.sp;
    if (given("--sarima-d")) c.sarima.d = f.sd;
    if (given("--sarima-q")) c.sarima.q = f.sq;
    if (given("--sarima-P")) c.sarima.P = f.sP;
    if (given("--sarima-D")) c.sarima.D = f.sD;
    if (given("--sarima-Q")) c.sarima.Q = f.sQ;
    if (given("--season")) c.sarima.s = f.season;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gdpcast: quarterly GDP forecasting with SARIMA and LSTM"};
    app.set_version_flag("--version", GDPCAST_VERSION);
    app.require_subcommand(1);
    Flags flags;

    auto* describe = app.add_subcommand("describe", "descriptive statistics of the series");
    add_common(*describe, flags);

    auto* adf = app.add_subcommand("adf", "augmented Dickey-Fuller unit-root test");
    add_common(*adf, flags);
    adf->add_option("--spec", flags.spec, "deterministic terms (default constant)")
        ->check(CLI::IsMember({"none", "no-constant", "constant", "trend", "constant+trend"}));
    adf->add_option("--max-lag", flags.max_lag, "largest augmentation lag considered");

    auto* sarima = app.add_subcommand("sarima", "SARIMA order search and holdout forecast");
    add_common(*sarima, flags);
    add_sarima(*sarima, flags);

    auto* lstm = app.add_subcommand("lstm", "LSTM grid search and holdout forecast");
    add_common(*lstm, flags);
    add_lstm(*lstm, flags);

    auto* compare = app.add_subcommand("compare", "full SARIMA vs LSTM comparison");
    add_common(*compare, flags);
    add_sarima(*compare, flags);
    add_lstm(*compare, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto* cmd = app.get_subcommands().front();
        const auto config = resolve(*cmd, flags);
        auto& log = std::cerr;
        if (cmd == describe) {
            gdpcast::app::cmd_describe(config, std::cout);
        } else if (cmd == adf) {
            gdpcast::app::cmd_adf(config, log);
        } else if (cmd == sarima) {
            gdpcast::app::cmd_sarima(config, log);
        } else if (cmd == lstm) {
            gdpcast::app::cmd_lstm(config, log);
        } else {
            gdpcast::app::cmd_compare(config, log);
        }
    } catch (const std::exception& e) {
        std::cerr << "gdpcast: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
