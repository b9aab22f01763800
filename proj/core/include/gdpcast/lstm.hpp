#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "gdpcast/series.hpp"

/// Two stacked LSTM layers followed by a one-unit linear dense head.
///
/// Everything is batched column-wise: an input of shape (features x batch)
/// produces hidden states of shape (units x batch). Gate blocks are stacked in
/// the order input, forget, candidate, output inside each kernel.
namespace gdpcast::lstm {

/// Candidate/cell activation. Gates always use the logistic function.
enum class Activation { Relu, Tanh };

std::string_view to_string(Activation a) noexcept;

struct LstmConfig {
    int epochs = 250;
    int units = 250;
    double recurrent_dropout = 0.0;
    int batch_size = 1;
    double l2_lambda = 0.01;
    int lookback = 4;
    double learning_rate = 1e-3;
    std::uint64_t seed = 42;
    Activation activation = Activation::Relu;
    /// z-score inputs and targets with training statistics.
    bool standardize = false;

    void validate() const;
};

enum Gate : int { kInput = 0, kForget = 1, kCandidate = 2, kOutput = 3 };

struct LayerWeights {
    Eigen::MatrixXd W;  // 4u x input_dim
    Eigen::MatrixXd U;  // 4u x u
    Eigen::VectorXd b;  // 4u

    [[nodiscard]] int units() const noexcept { return static_cast<int>(U.cols()); }
    [[nodiscard]] int input_dim() const noexcept { return static_cast<int>(W.cols()); }
};

struct LstmWeights {
    std::array<LayerWeights, 2> layers;
    Eigen::VectorXd w_dense;  // u
    double b_dense = 0.0;

    static LstmWeights zeros(int units);

    [[nodiscard]] int units() const noexcept { return static_cast<int>(w_dense.size()); }
    [[nodiscard]] std::size_t parameter_count() const noexcept;

    /// Every tensor as a flat view, in a fixed order:
    /// W1, U1, b1, W2, U2, b2, w_dense, b_dense.
    std::vector<std::span<double>> tensors();
    [[nodiscard]] std::vector<std::span<const double>> tensors() const;
};

/// Glorot-uniform kernels (per gate block), zero biases, forget bias 1.
LstmWeights glorot_init(int units, std::uint64_t seed);

struct CellState {
    Eigen::MatrixXd h;  // units x batch
    Eigen::MatrixXd c;

    static CellState zeros(int units, int batch);
};

/// Everything backward() needs from one time step of one layer.
struct GateCache {
    Eigen::MatrixXd x;          // input_dim x batch
    Eigen::MatrixXd h_in;       // recurrent input after the dropout mask
    Eigen::MatrixXd c_prev;
    Eigen::MatrixXd gates;      // 4u x batch, post-activation
    Eigen::MatrixXd candidate_pre;  // u x batch, pre-activation of g
    Eigen::MatrixXd c;
    Eigen::MatrixXd c_act;      // act(c)
};

/// One LSTM step. `recurrent_mask` (units x batch) multiplies h before it
/// reaches the recurrent kernel.
std::pair<CellState, GateCache> cell_forward(const Eigen::MatrixXd& x, const CellState& state,
                                             const LayerWeights& layer, Activation activation,
                                             const Eigen::MatrixXd* recurrent_mask = nullptr);

/// Variational dropout mask (units x batch): each entry is 0 with probability
/// `rate`, otherwise 1 / (1 - rate).
Eigen::MatrixXd sample_recurrent_mask(int units, int batch, double rate, std::mt19937_64& rng);

struct ForwardCache {
    std::vector<GateCache> layer1;
    std::vector<GateCache> layer2;
    std::optional<Eigen::MatrixXd> mask;
    Eigen::MatrixXd h_last;  // layer-2 hidden state after the final step
};

struct ForwardResult {
    Eigen::RowVectorXd predictions;  // 1 x batch
    ForwardCache cache;
};

/// `windows` is lookback x batch: column j holds one input sequence, oldest
/// value first. `mask` (units x batch) enables layer-2 recurrent dropout.
ForwardResult forward(const LstmWeights& weights, const Eigen::MatrixXd& windows,
                      Activation activation, const Eigen::MatrixXd* mask = nullptr);

/// Evaluation-mode prediction for a single window.
double predict(const LstmWeights& weights, std::span<const double> window, Activation activation);

/// Mean squared error plus l2_lambda * |w_dense|^2.
double loss(std::span<const double> predictions, std::span<const double> targets,
            const Eigen::VectorXd& w_dense, double l2_lambda);

/// Backpropagation through time. `d_predictions` is dLoss/dprediction per
/// batch column. Returns gradients shaped like the weights; the L2 penalty is
/// not included (see add_l2_gradient).
LstmWeights backward(const LstmWeights& weights, const ForwardCache& cache,
                     const Eigen::RowVectorXd& d_predictions, Activation activation);

void add_l2_gradient(LstmWeights& grads, const LstmWeights& weights, double l2_lambda);

/// Loss and full gradient for one batch: forward, MSE + L2, backward.
std::pair<double, LstmWeights> loss_and_gradient(const LstmWeights& weights,
                                                 const Eigen::MatrixXd& windows,
                                                 const Eigen::RowVectorXd& targets,
                                                 double l2_lambda, Activation activation,
                                                 const Eigen::MatrixXd* mask = nullptr);

struct AdamState {
    LstmWeights m;
    LstmWeights v;
    long t = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-7;

    static AdamState for_weights(const LstmWeights& weights);
};

void adam_step(LstmWeights& weights, const LstmWeights& grads, AdamState& state,
               double learning_rate);

/// Affine map applied to raw values before they enter the network.
struct Scaler {
    double mean = 0.0;
    double scale = 1.0;

    [[nodiscard]] double forward(double x) const noexcept { return (x - mean) / scale; }
    [[nodiscard]] double inverse(double z) const noexcept { return z * scale + mean; }
};

struct LstmModel {
    LstmConfig config;
    LstmWeights weights;
    Scaler scaler;

    /// One-step prediction on the original scale, evaluation mode.
    [[nodiscard]] double predict(std::span<const double> window) const;
    /// Batched evaluation-mode predictions for many windows.
    [[nodiscard]] std::vector<double> predict(std::span<const SupervisedWindow> windows) const;
};

struct TrainHistory {
    std::vector<double> mse;
    std::vector<double> mae;
    std::vector<double> mape;  // percent
};

struct TrainResult {
    LstmModel model;
    TrainHistory history;
};

/// Trains with Adam on windows in temporal order, `batch_size` windows per
/// step, one fresh variational dropout mask per sequence per epoch.
/// Deterministic for a fixed config.seed.
TrainResult train(const LstmConfig& config, std::span<const SupervisedWindow> windows);

/// Feeds each one-step prediction back as the newest input.
std::vector<double> forecast_recursive(const LstmModel& model, std::span<const double> history,
                                       int h);

void to_json(nlohmann::json& j, const LstmConfig& config);
void from_json(const nlohmann::json& j, LstmConfig& config);
void to_json(nlohmann::json& j, const LstmModel& model);
void from_json(const nlohmann::json& j, LstmModel& model);

/// Columns epoch,mse,mae,mape (epochs numbered from 1).
void write_history_csv(std::ostream& out, const TrainHistory& history);

}  // namespace gdpcast::lstm
