#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gdpcast/format.hpp"
#include "gdpcast/lstm.hpp"

namespace gdpcast::lstm {

namespace {

constexpr std::array<const char*, 4> kGateSuffix{"i", "f", "g", "o"};

nlohmann::json matrix_rows(const Eigen::MatrixXd& m) {
    auto rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        auto row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

void read_rows(const nlohmann::json& rows, Eigen::Ref<Eigen::MatrixXd> out) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != out.rows()) {
        throw std::invalid_argument("weight matrix has wrong row count");
    }
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != out.cols()) {
            throw std::invalid_argument("weight matrix has wrong column count");
        }
        for (Eigen::Index c = 0; c < out.cols(); ++c) out(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
}

Activation parse_activation(const std::string& name) {
    if (name == "relu") return Activation::Relu;
    if (name == "tanh") return Activation::Tanh;
    throw std::invalid_argument("unknown activation '" + name + "'");
}

}  // namespace

void to_json(nlohmann::json& j, const LstmConfig& c) {
    j = nlohmann::json{{"epochs", c.epochs},
                       {"units", c.units},
                       {"recurrent_dropout", c.recurrent_dropout},
                       {"batch_size", c.batch_size},
                       {"l2_lambda", c.l2_lambda},
                       {"lookback", c.lookback},
                       {"learning_rate", c.learning_rate},
                       {"seed", c.seed},
                       {"activation", std::string(to_string(c.activation))},
                       {"standardize", c.standardize}};
}

void from_json(const nlohmann::json& j, LstmConfig& c) {
    LstmConfig d;
    c.epochs = j.value("epochs", d.epochs);
    c.units = j.value("units", d.units);
    c.recurrent_dropout = j.value("recurrent_dropout", d.recurrent_dropout);
    c.batch_size = j.value("batch_size", d.batch_size);
    c.l2_lambda = j.value("l2_lambda", d.l2_lambda);
    c.lookback = j.value("lookback", d.lookback);
    c.learning_rate = j.value("learning_rate", d.learning_rate);
    c.seed = j.value("seed", d.seed);
    c.activation = parse_activation(j.value("activation", std::string("relu")));
    c.standardize = j.value("standardize", d.standardize);
    c.validate();
}

void to_json(nlohmann::json& j, const LstmModel& model) {
    const int u = model.weights.units();
    auto layers = nlohmann::json::array();
    for (const auto& layer : model.weights.layers) {
        nlohmann::json l;
        for (int g = 0; g < 4; ++g) {
            const std::string s = kGateSuffix[static_cast<std::size_t>(g)];
            l["W_" + s] = matrix_rows(layer.W.middleRows(g * u, u));
            l["U_" + s] = matrix_rows(layer.U.middleRows(g * u, u));
            const Eigen::VectorXd b = layer.b.segment(g * u, u);
            l["b_" + s] = std::vector<double>(b.data(), b.data() + b.size());
        }
        layers.push_back(std::move(l));
    }
    const auto& wd = model.weights.w_dense;
    j = nlohmann::json{{"format", "gdpcast-lstm-v1"},
                       {"config", model.config},
                       {"seed", model.config.seed},
                       {"scaler", {{"mean", model.scaler.mean}, {"scale", model.scaler.scale}}},
                       {"layers", std::move(layers)},
                       {"w_dense", std::vector<double>(wd.data(), wd.data() + wd.size())},
                       {"b_dense", model.weights.b_dense}};
}

void from_json(const nlohmann::json& j, LstmModel& model) {
    model.config = j.at("config").get<LstmConfig>();
    const int u = model.config.units;
    model.weights = LstmWeights::zeros(u);
    const auto& layers = j.at("layers");
    if (!layers.is_array() || layers.size() != 2) throw std::invalid_argument("model needs 2 layers");
    for (std::size_t k = 0; k < 2; ++k) {
        auto& layer = model.weights.layers[k];
        for (int g = 0; g < 4; ++g) {
            const std::string s = kGateSuffix[static_cast<std::size_t>(g)];
            read_rows(layers[k].at("W_" + s), layer.W.middleRows(g * u, u));
            read_rows(layers[k].at("U_" + s), layer.U.middleRows(g * u, u));
            const auto b = layers[k].at("b_" + s).get<std::vector<double>>();
            if (b.size() != static_cast<std::size_t>(u)) throw std::invalid_argument("bias size mismatch");
            layer.b.segment(g * u, u) = Eigen::Map<const Eigen::VectorXd>(b.data(), u);
        }
    }
    const auto wd = j.at("w_dense").get<std::vector<double>>();
    if (wd.size() != static_cast<std::size_t>(u)) throw std::invalid_argument("dense kernel size mismatch");
    model.weights.w_dense = Eigen::Map<const Eigen::VectorXd>(wd.data(), u);
    model.weights.b_dense = j.at("b_dense").get<double>();
    model.scaler.mean = j.at("scaler").at("mean").get<double>();
    model.scaler.scale = j.at("scaler").at("scale").get<double>();
}

void write_history_csv(std::ostream& out, const TrainHistory& history) {
    out << "epoch,mse,mae,mape\n";
    for (std::size_t e = 0; e < history.mse.size(); ++e) {
        out << e + 1 << ',' << format_double(history.mse[e]) << ',' << format_double(history.mae[e])
            << ',' << format_double(history.mape[e]) << '\n';
    }
}

}  // namespace gdpcast::lstm
