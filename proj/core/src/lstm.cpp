#include "gdpcast/lstm.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "gdpcast/error.hpp"

namespace gdpcast::lstm {

namespace {

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& z) {
    return z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

Eigen::MatrixXd activate(const Eigen::MatrixXd& z, Activation a) {
    if (a == Activation::Tanh) return z.array().tanh().matrix();
    return z.cwiseMax(0.0);
}

// Derivative of the activation expressed through its pre-activation input.
Eigen::MatrixXd activate_grad(const Eigen::MatrixXd& z, const Eigen::MatrixXd& activated,
                              Activation a) {
    if (a == Activation::Tanh) return (1.0 - activated.array().square()).matrix();
    // ReLU subgradient at 0 is 0
    return z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
}

void fill_uniform(Eigen::Ref<Eigen::MatrixXd> block, double limit, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
        for (Eigen::Index r = 0; r < block.rows(); ++r) block(r, c) = dist(rng);
    }
}

LayerWeights zero_layer(int units, int input_dim) {
    return LayerWeights{Eigen::MatrixXd::Zero(4 * units, input_dim),
                        Eigen::MatrixXd::Zero(4 * units, units),
                        Eigen::VectorXd::Zero(4 * units)};
}

template <typename Weights, typename Span>
std::vector<Span> collect_tensors(Weights& w) {
    std::vector<Span> out;
    for (auto& layer : w.layers) {
        out.emplace_back(layer.W.data(), static_cast<std::size_t>(layer.W.size()));
        out.emplace_back(layer.U.data(), static_cast<std::size_t>(layer.U.size()));
        out.emplace_back(layer.b.data(), static_cast<std::size_t>(layer.b.size()));
    }
    out.emplace_back(w.w_dense.data(), static_cast<std::size_t>(w.w_dense.size()));
    out.emplace_back(&w.b_dense, 1);
    return out;
}

struct LayerGrad {
    Eigen::MatrixXd dW, dU;
    Eigen::VectorXd db;
};

}  // namespace

std::string_view to_string(Activation a) noexcept {
    return a == Activation::Tanh ? "tanh" : "relu";
}

void LstmConfig::validate() const {
    if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (units < 1) throw std::invalid_argument("units must be >= 1");
    if (!(recurrent_dropout >= 0.0 && recurrent_dropout < 1.0)) {
        throw std::invalid_argument("recurrent_dropout must be in [0, 1)");
    }
    if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
    if (!(l2_lambda >= 0.0)) throw std::invalid_argument("l2_lambda must be >= 0");
    if (lookback < 1) throw std::invalid_argument("lookback must be >= 1");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
}

LstmWeights LstmWeights::zeros(int units) {
    if (units < 1) throw std::invalid_argument("units must be >= 1");
    return LstmWeights{{zero_layer(units, 1), zero_layer(units, units)},
                       Eigen::VectorXd::Zero(units),
                       0.0};
}

std::size_t LstmWeights::parameter_count() const noexcept {
    std::size_t n = 0;
    for (const auto& t : tensors()) n += t.size();
    return n;
}

std::vector<std::span<double>> LstmWeights::tensors() {
    return collect_tensors<LstmWeights, std::span<double>>(*this);
}

std::vector<std::span<const double>> LstmWeights::tensors() const {
    return collect_tensors<const LstmWeights, std::span<const double>>(*this);
}

LstmWeights glorot_init(int units, std::uint64_t seed) {
    auto w = LstmWeights::zeros(units);
    std::mt19937_64 rng(seed);
    for (auto& layer : w.layers) {
        const int in = layer.input_dim();
        const double kernel_limit = std::sqrt(6.0 / static_cast<double>(in + units));
        const double recurrent_limit = std::sqrt(6.0 / static_cast<double>(2 * units));
        for (int g = 0; g < 4; ++g) {
            fill_uniform(layer.W.middleRows(g * units, units), kernel_limit, rng);
            fill_uniform(layer.U.middleRows(g * units, units), recurrent_limit, rng);
        }
        layer.b.segment(kForget * units, units).setOnes();
    }
    Eigen::MatrixXd dense(units, 1);
    fill_uniform(dense, std::sqrt(6.0 / static_cast<double>(units + 1)), rng);
    w.w_dense = dense.col(0);
    return w;
}

CellState CellState::zeros(int units, int batch) {
    return CellState{Eigen::MatrixXd::Zero(units, batch), Eigen::MatrixXd::Zero(units, batch)};
}

namespace {

// One step given the input projection W x + b (4u x batch), computed by the
// caller so a whole sequence can be projected with a single product.
std::pair<CellState, GateCache> cell_step(const Eigen::MatrixXd& x, const Eigen::MatrixXd& projected,
                                          const CellState& state, const LayerWeights& layer,
                                          Activation activation, const Eigen::MatrixXd* recurrent_mask) {
    const int u = layer.units();
    const Eigen::Index batch = x.cols();

    GateCache cache;
    cache.x = x;
    cache.h_in = recurrent_mask != nullptr ? state.h.cwiseProduct(*recurrent_mask) : state.h;
    cache.c_prev = state.c;

    Eigen::MatrixXd z = projected;
    z.noalias() += layer.U * cache.h_in;

    cache.gates.resize(4 * u, batch);
    cache.gates.middleRows(kInput * u, u) = sigmoid(z.middleRows(kInput * u, u));
    cache.gates.middleRows(kForget * u, u) = sigmoid(z.middleRows(kForget * u, u));
    cache.candidate_pre = z.middleRows(kCandidate * u, u);
    cache.gates.middleRows(kCandidate * u, u) = activate(cache.candidate_pre, activation);
    cache.gates.middleRows(kOutput * u, u) = sigmoid(z.middleRows(kOutput * u, u));

    const auto i = cache.gates.middleRows(kInput * u, u);
    const auto f = cache.gates.middleRows(kForget * u, u);
    const auto g = cache.gates.middleRows(kCandidate * u, u);
    const auto o = cache.gates.middleRows(kOutput * u, u);

    cache.c = f.cwiseProduct(state.c) + i.cwiseProduct(g);
    cache.c_act = activate(cache.c, activation);
    CellState next{o.cwiseProduct(cache.c_act), cache.c};
    return {std::move(next), std::move(cache)};
}

// Runs one layer over a whole sequence. `inputs` holds the steps side by
// side: columns [t*batch, (t+1)*batch) are step t.
Eigen::MatrixXd layer_forward(const LayerWeights& layer, const Eigen::MatrixXd& inputs,
                              Eigen::Index batch, Activation activation,
                              const Eigen::MatrixXd* mask, std::vector<GateCache>& caches) {
    const int u = layer.units();
    const Eigen::Index steps = inputs.cols() / batch;
    Eigen::MatrixXd projected = layer.W * inputs;
    projected.colwise() += layer.b;

    Eigen::MatrixXd hidden(u, inputs.cols());
    auto state = CellState::zeros(u, static_cast<int>(batch));
    for (Eigen::Index t = 0; t < steps; ++t) {
        auto [next, cache] = cell_step(inputs.middleCols(t * batch, batch),
                                       projected.middleCols(t * batch, batch), state, layer,
                                       activation, mask);
        hidden.middleCols(t * batch, batch) = next.h;
        state = std::move(next);
        caches.push_back(std::move(cache));
    }
    return hidden;
}

}  // namespace

std::pair<CellState, GateCache> cell_forward(const Eigen::MatrixXd& x, const CellState& state,
                                             const LayerWeights& layer, Activation activation,
                                             const Eigen::MatrixXd* recurrent_mask) {
    const int u = layer.units();
    const Eigen::Index batch = x.cols();
    if (x.rows() != layer.input_dim() || state.h.rows() != u || state.c.rows() != u ||
        state.h.cols() != batch || state.c.cols() != batch) {
        throw std::invalid_argument("cell_forward: shape mismatch");
    }
    if (recurrent_mask != nullptr &&
        (recurrent_mask->rows() != u || recurrent_mask->cols() != batch)) {
        throw std::invalid_argument("cell_forward: mask shape mismatch");
    }
    Eigen::MatrixXd projected = layer.W * x;
    projected.colwise() += layer.b;
    return cell_step(x, projected, state, layer, activation, recurrent_mask);
}

Eigen::MatrixXd sample_recurrent_mask(int units, int batch, double rate, std::mt19937_64& rng) {
    if (!(rate >= 0.0 && rate < 1.0)) throw std::invalid_argument("dropout rate must be in [0, 1)");
    std::bernoulli_distribution keep(1.0 - rate);
    const double kept = 1.0 / (1.0 - rate);
    Eigen::MatrixXd mask(units, batch);
    for (Eigen::Index j = 0; j < mask.cols(); ++j) {
        for (Eigen::Index r = 0; r < mask.rows(); ++r) mask(r, j) = keep(rng) ? kept : 0.0;
    }
    return mask;
}

ForwardResult forward(const LstmWeights& weights, const Eigen::MatrixXd& windows,
                      Activation activation, const Eigen::MatrixXd* mask) {
    const int u = weights.units();
    const Eigen::Index steps = windows.rows();
    const Eigen::Index batch = windows.cols();
    if (steps < 1 || batch < 1) throw std::invalid_argument("forward: empty window batch");

    ForwardResult out;
    out.cache.layer1.reserve(static_cast<std::size_t>(steps));
    out.cache.layer2.reserve(static_cast<std::size_t>(steps));
    if (mask != nullptr) out.cache.mask = *mask;

    if (mask != nullptr && (mask->rows() != u || mask->cols() != batch)) {
        throw std::invalid_argument("forward: mask shape mismatch");
    }
    // Step t of every sequence sits in columns [t*batch, (t+1)*batch).
    Eigen::MatrixXd x1(1, steps * batch);
    for (Eigen::Index t = 0; t < steps; ++t) x1.middleCols(t * batch, batch) = windows.row(t);
    const Eigen::MatrixXd h1 =
        layer_forward(weights.layers[0], x1, batch, activation, nullptr, out.cache.layer1);
    const Eigen::MatrixXd h2 =
        layer_forward(weights.layers[1], h1, batch, activation, mask, out.cache.layer2);
    out.cache.h_last = h2.rightCols(batch);
    out.predictions = (weights.w_dense.transpose() * out.cache.h_last).array() + weights.b_dense;
    return out;
}
double predict(const LstmWeights& weights, std::span<const double> window, Activation activation) {
    const Eigen::MatrixXd column = Eigen::Map<const Eigen::VectorXd>(
        window.data(), static_cast<Eigen::Index>(window.size()));
    return forward(weights, column, activation).predictions(0);
}

double loss(std::span<const double> predictions, std::span<const double> targets,
            const Eigen::VectorXd& w_dense, double l2_lambda) {
    if (predictions.empty()) throw std::invalid_argument("loss: empty batch");
    if (predictions.size() != targets.size()) throw std::invalid_argument("loss: length mismatch");
    double sse = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double e = predictions[i] - targets[i];
        sse += e * e;
    }
    return sse / static_cast<double>(predictions.size()) + l2_lambda * w_dense.squaredNorm();
}

namespace {

// Walks one layer backward through time. `dh_from_above[t]` is the gradient
// reaching h_t from outside the recurrence. Returns gradients w.r.t. the
// layer's inputs at each step.
std::vector<Eigen::MatrixXd> layer_backward(const LayerWeights& layer,
                                            const std::vector<GateCache>& caches,
                                            const std::vector<Eigen::MatrixXd>& dh_from_above,
                                            const Eigen::MatrixXd* mask, Activation activation,
                                            LayerGrad& grad) {
    const int u = layer.units();
    const std::size_t steps = caches.size();
    const Eigen::Index batch = caches.front().x.cols();

    Eigen::MatrixXd dh_next = Eigen::MatrixXd::Zero(u, batch);
    Eigen::MatrixXd dc_next = Eigen::MatrixXd::Zero(u, batch);
    // Gate gradients, inputs and recurrent inputs of all steps side by side,
    // so the weight gradients are three products instead of one per step.
    const Eigen::Index width = static_cast<Eigen::Index>(steps) * batch;
    Eigen::MatrixXd dz_all(4 * u, width);
    Eigen::MatrixXd x_all(layer.input_dim(), width);
    Eigen::MatrixXd h_all(u, width);

    for (std::size_t k = steps; k-- > 0;) {
        const auto& c = caches[k];
        const Eigen::Index col = static_cast<Eigen::Index>(k) * batch;
        const auto i = c.gates.middleRows(kInput * u, u).array();
        const auto f = c.gates.middleRows(kForget * u, u).array();
        const auto g = c.gates.middleRows(kCandidate * u, u).array();
        const auto o = c.gates.middleRows(kOutput * u, u).array();

        const Eigen::ArrayXXd dh = (dh_from_above[k] + dh_next).array();
        const Eigen::ArrayXXd dc =
            dc_next.array() + dh * o * activate_grad(c.c, c.c_act, activation).array();

        auto dz = dz_all.middleCols(col, batch);
        dz.middleRows(kInput * u, u) = (dc * g * i * (1.0 - i)).matrix();
        dz.middleRows(kForget * u, u) = (dc * c.c_prev.array() * f * (1.0 - f)).matrix();
        dz.middleRows(kCandidate * u, u) =
            (dc * i * activate_grad(c.candidate_pre, g.matrix(), activation).array()).matrix();
        dz.middleRows(kOutput * u, u) = (dh * c.c_act.array() * o * (1.0 - o)).matrix();
        x_all.middleCols(col, batch) = c.x;
        h_all.middleCols(col, batch) = c.h_in;

        dh_next.noalias() = layer.U.transpose() * dz;
        if (mask != nullptr) dh_next = dh_next.cwiseProduct(*mask);
        dc_next = (dc * f).matrix();
    }

    grad.dW.noalias() = dz_all * x_all.transpose();
    grad.dU.noalias() = dz_all * h_all.transpose();
    grad.db = dz_all.rowwise().sum();
    const Eigen::MatrixXd dx_all = layer.W.transpose() * dz_all;
    std::vector<Eigen::MatrixXd> dx(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        dx[k] = dx_all.middleCols(static_cast<Eigen::Index>(k) * batch, batch);
    }
    return dx;
}

}  // namespace

LstmWeights backward(const LstmWeights& weights, const ForwardCache& cache,
                     const Eigen::RowVectorXd& d_predictions, Activation activation) {
    const int u = weights.units();
    const std::size_t steps = cache.layer2.size();
    if (steps == 0 || cache.layer1.size() != steps) throw std::invalid_argument("backward: missing caches");
    const Eigen::Index batch = cache.h_last.cols();
    if (d_predictions.size() != batch) throw std::invalid_argument("backward: gradient shape mismatch");

    LstmWeights grads;
    grads.w_dense = cache.h_last * d_predictions.transpose();
    grads.b_dense = d_predictions.sum();

    std::vector<Eigen::MatrixXd> dh2(steps, Eigen::MatrixXd::Zero(u, batch));
    dh2.back() = weights.w_dense * d_predictions;

    LayerGrad g2;
    const Eigen::MatrixXd* mask = cache.mask ? &*cache.mask : nullptr;
    const auto dh1 = layer_backward(weights.layers[1], cache.layer2, dh2, mask, activation, g2);

    LayerGrad g1;
    layer_backward(weights.layers[0], cache.layer1, dh1, nullptr, activation, g1);

    grads.layers[0] = LayerWeights{std::move(g1.dW), std::move(g1.dU), std::move(g1.db)};
    grads.layers[1] = LayerWeights{std::move(g2.dW), std::move(g2.dU), std::move(g2.db)};
    return grads;
}

void add_l2_gradient(LstmWeights& grads, const LstmWeights& weights, double l2_lambda) {
    grads.w_dense += 2.0 * l2_lambda * weights.w_dense;
}

std::pair<double, LstmWeights> loss_and_gradient(const LstmWeights& weights,
                                                 const Eigen::MatrixXd& windows,
                                                 const Eigen::RowVectorXd& targets,
                                                 double l2_lambda, Activation activation,
                                                 const Eigen::MatrixXd* mask) {
    auto result = forward(weights, windows, activation, mask);
    if (targets.size() != result.predictions.size()) {
        throw std::invalid_argument("loss_and_gradient: target count mismatch");
    }
    const double value = loss(std::span<const double>(result.predictions.data(),
                                                      static_cast<std::size_t>(result.predictions.size())),
                              std::span<const double>(targets.data(), static_cast<std::size_t>(targets.size())),
                              weights.w_dense, l2_lambda);
    const Eigen::RowVectorXd d_pred =
        2.0 * (result.predictions - targets) / static_cast<double>(targets.size());
    auto grads = backward(weights, result.cache, d_pred, activation);
    add_l2_gradient(grads, weights, l2_lambda);
    return {value, std::move(grads)};
}

AdamState AdamState::for_weights(const LstmWeights& weights) {
    const auto zeros = LstmWeights::zeros(weights.units());
    return AdamState{zeros, zeros};
}

void adam_step(LstmWeights& weights, const LstmWeights& grads, AdamState& state,
               double learning_rate) {
    auto w = weights.tensors();
    const auto g = grads.tensors();
    auto m = state.m.tensors();
    auto v = state.v.tensors();
    if (w.size() != g.size() || w.size() != m.size() || w.size() != v.size()) {
        throw std::invalid_argument("adam_step: shape mismatch");
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k].size() != g[k].size() || w[k].size() != m[k].size() || w[k].size() != v[k].size()) {
            throw std::invalid_argument("adam_step: shape mismatch");
        }
    }

    ++state.t;
    const double b1 = state.beta1;
    const double b2 = state.beta2;
    const double correction1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
    const double correction2 = 1.0 - std::pow(b2, static_cast<double>(state.t));
    const double inv1 = 1.0 / correction1;
    const double inv2 = 1.0 / correction2;
    for (std::size_t k = 0; k < w.size(); ++k) {
        using Map = Eigen::Map<Eigen::ArrayXd>;
        const auto n = static_cast<Eigen::Index>(w[k].size());
        const Eigen::Map<const Eigen::ArrayXd> gk(g[k].data(), n);
        Map mk(m[k].data(), n), vk(v[k].data(), n), wk(w[k].data(), n);
        mk = b1 * mk + (1.0 - b1) * gk;
        vk = b2 * vk + (1.0 - b2) * gk.square();
        wk -= learning_rate * (mk * inv1) / ((vk * inv2).sqrt() + state.epsilon);
    }
}

double LstmModel::predict(std::span<const double> window) const {
    if (window.size() != static_cast<std::size_t>(config.lookback)) {
        throw std::invalid_argument("window length " + std::to_string(window.size()) +
                                    " does not match lookback " + std::to_string(config.lookback));
    }
    std::vector<double> scaled(window.size());
    for (std::size_t i = 0; i < window.size(); ++i) scaled[i] = scaler.forward(window[i]);
    return scaler.inverse(lstm::predict(weights, scaled, config.activation));
}

namespace {

Eigen::MatrixXd window_matrix(std::span<const SupervisedWindow> windows, const Scaler& scaler,
                              int lookback) {
    Eigen::MatrixXd out(lookback, static_cast<Eigen::Index>(windows.size()));
    for (std::size_t j = 0; j < windows.size(); ++j) {
        if (windows[j].inputs.size() != static_cast<std::size_t>(lookback)) {
            throw std::invalid_argument("window length does not match lookback");
        }
        for (int t = 0; t < lookback; ++t) {
            out(t, static_cast<Eigen::Index>(j)) = scaler.forward(windows[j].inputs[static_cast<std::size_t>(t)]);
        }
    }
    return out;
}

Scaler fit_scaler(std::span<const SupervisedWindow> windows) {
    // The first window's inputs plus every target is the underlying series
    // when the windows come from make_windows.
    std::vector<double> values(windows.front().inputs);
    for (const auto& w : windows) values.push_back(w.target);
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(values.size()));
    return Scaler{mean, sd > 0.0 ? sd : 1.0};
}

}  // namespace

std::vector<double> LstmModel::predict(std::span<const SupervisedWindow> windows) const {
    if (windows.empty()) return {};
    const auto x = window_matrix(windows, scaler, config.lookback);
    const auto result = forward(weights, x, config.activation);
    std::vector<double> out(windows.size());
    for (std::size_t j = 0; j < windows.size(); ++j) {
        out[j] = scaler.inverse(result.predictions(static_cast<Eigen::Index>(j)));
    }
    return out;
}

TrainResult train(const LstmConfig& config, std::span<const SupervisedWindow> windows) {
    config.validate();
    if (windows.empty()) throw std::invalid_argument("train: no training windows");

    TrainResult result;
    auto& model = result.model;
    model.config = config;
    model.scaler = config.standardize ? fit_scaler(windows) : Scaler{};

    std::mt19937_64 rng(config.seed);
    model.weights = glorot_init(config.units, rng());
    auto adam = AdamState::for_weights(model.weights);

    const int u = config.units;
    const auto x_all = window_matrix(windows, model.scaler, config.lookback);
    Eigen::RowVectorXd y_all(static_cast<Eigen::Index>(windows.size()));
    for (std::size_t j = 0; j < windows.size(); ++j) {
        y_all(static_cast<Eigen::Index>(j)) = model.scaler.forward(windows[j].target);
    }

    const bool dropout = config.recurrent_dropout > 0.0;
    const Eigen::Index n = x_all.cols();

    auto& hist = result.history;
    hist.mse.reserve(static_cast<std::size_t>(config.epochs));
    hist.mae.reserve(static_cast<std::size_t>(config.epochs));
    hist.mape.reserve(static_cast<std::size_t>(config.epochs));

    Eigen::MatrixXd mask;
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        for (Eigen::Index start = 0; start < n; start += config.batch_size) {
            const Eigen::Index b = std::min<Eigen::Index>(config.batch_size, n - start);
            if (dropout) {
                mask = sample_recurrent_mask(u, static_cast<int>(b), config.recurrent_dropout, rng);
            }
            const auto [value, grads] =
                loss_and_gradient(model.weights, x_all.middleCols(start, b), y_all.segment(start, b),
                                  config.l2_lambda, config.activation, dropout ? &mask : nullptr);
            if (!std::isfinite(value)) {
                throw TrainingDiverged("non-finite loss at epoch " + std::to_string(epoch), epoch);
            }
            adam_step(model.weights, grads, adam, config.learning_rate);
        }

        const auto pred = forward(model.weights, x_all, config.activation).predictions;
        double se = 0.0;
        double ae = 0.0;
        double ape = 0.0;
        bool zero_target = false;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double actual = windows[static_cast<std::size_t>(j)].target;
            const double e = actual - model.scaler.inverse(pred(j));
            se += e * e;
            ae += std::abs(e);
            if (actual == 0.0) {
                zero_target = true;
            } else {
                ape += std::abs(e) / std::abs(actual);
            }
        }
        const double nd = static_cast<double>(n);
        if (!std::isfinite(se)) {
            throw TrainingDiverged("non-finite training error at epoch " + std::to_string(epoch), epoch);
        }
        hist.mse.push_back(se / nd);
        hist.mae.push_back(ae / nd);
        hist.mape.push_back(zero_target ? std::nan("") : 100.0 * ape / nd);
    }
    return result;
}

std::vector<double> forecast_recursive(const LstmModel& model, std::span<const double> history,
                                       int h) {
    if (h < 1) throw std::invalid_argument("forecast horizon must be >= 1");
    const auto lookback = static_cast<std::size_t>(model.config.lookback);
    if (history.size() < lookback) {
        throw std::invalid_argument("forecast needs " + std::to_string(lookback) +
                                    " history values, got " + std::to_string(history.size()));
    }
    std::vector<double> window(history.end() - static_cast<std::ptrdiff_t>(lookback), history.end());
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(h));
    for (int step = 0; step < h; ++step) {
        const double next = model.predict(window);
        out.push_back(next);
        window.erase(window.begin());
        window.push_back(next);
    }
    return out;
}

}  // namespace gdpcast::lstm
