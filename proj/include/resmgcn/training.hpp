#pragma once

#include "resmgcn/evaluate.hpp"
#include "resmgcn/model.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace resmgcn {

enum class FloatMode { F64, F32 };

inline std::string float_mode_name(FloatMode m) { return m == FloatMode::F64 ? "f64" : "f32"; }

struct TrainConfig {
    std::size_t hidden = 64;
    std::size_t num_layers = 2;
    double learning_rate = 5e-4;
    std::size_t max_epochs = 100;
    std::size_t patience = 10;
    std::uint64_t seed = 1;
    double negative_ratio = 1.0;
    FloatMode float_mode = FloatMode::F64;
    Arch arch = Arch::ResMgcn;
    Activation activation = Activation::Relu;
    Fusion fusion = Fusion::MeanWithPrevious;
    bool first_layer_halve = false;
    bool bipartite_negatives = false;

    void validate() const {
        if (num_layers < 1) throw ConfigError("num_layers must be >= 1");
        if (hidden < 1) throw ConfigError("hidden width must be >= 1");
        if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
        if (max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
        if (patience > max_epochs) throw ConfigError("patience cannot exceed max_epochs");
        if (!(negative_ratio > 0.0)) throw ConfigError("negative ratio must be > 0");
    }

    EncoderConfig encoder() const {
        return EncoderConfig{arch, num_layers, hidden, activation, fusion, first_layer_halve};
    }
};

struct EpochRecord {
    std::size_t epoch = 0; // 1-based
    double loss = 0.0;
    double val_auprc = 0.0;
    double val_auroc = 0.0;
    double seconds = 0.0;
};

using History = std::vector<EpochRecord>;

/// Adam accumulators, one (m, v) pair per parameter matrix.
template <typename Real>
struct AdamState {
    std::vector<DenseMatrix<Real>> first_moment;
    std::vector<DenseMatrix<Real>> second_moment;
    std::uint64_t step = 0;

    static AdamState for_params(const std::vector<DenseMatrix<Real>*>& params) {
        AdamState s;
        for (const auto* p : params) {
            s.first_moment.emplace_back(p->rows(), p->cols(), Real{0});
            s.second_moment.emplace_back(p->rows(), p->cols(), Real{0});
        }
        return s;
    }
};

/// One bias-corrected Adam update over a flat parameter list.
template <typename Real>
void adam_step(const std::vector<DenseMatrix<Real>*>& params,
               const std::vector<const DenseMatrix<Real>*>& grads, AdamState<Real>& state,
               Real lr, Real beta1 = Real{0.9}, Real beta2 = Real{0.999},
               Real epsilon = Real{1e-8}) {
    if (params.size() != grads.size() || params.size() != state.first_moment.size()) {
        throw ShapeError("adam_step: parameter/gradient/state count mismatch");
    }
    state.step += 1;
    const Real bias1 = Real{1} - static_cast<Real>(std::pow(static_cast<double>(beta1),
                                                            static_cast<double>(state.step)));
    const Real bias2 = Real{1} - static_cast<Real>(std::pow(static_cast<double>(beta2),
                                                            static_cast<double>(state.step)));
    for (std::size_t p = 0; p < params.size(); ++p) {
        DenseMatrix<Real>& w = *params[p];
        const DenseMatrix<Real>& g = *grads[p];
        if (!w.same_shape(g)) {
            throw ShapeError("adam_step: parameter " + w.shape_string() + " vs gradient " +
                             g.shape_string());
        }
        DenseMatrix<Real>& m = state.first_moment[p];
        DenseMatrix<Real>& v = state.second_moment[p];
        for (std::size_t i = 0; i < w.size(); ++i) {
            const Real gi = g.data()[i];
            m.data()[i] = beta1 * m.data()[i] + (Real{1} - beta1) * gi;
            v.data()[i] = beta2 * v.data()[i] + (Real{1} - beta2) * gi * gi;
            const Real m_hat = m.data()[i] / bias1;
            const Real v_hat = v.data()[i] / bias2;
            w.data()[i] -= lr * m_hat / (std::sqrt(v_hat) + epsilon);
        }
    }
}

template <typename Real>
struct TrainResult {
    ModelParams<Real> best_params;  // at the best validation AUPRC
    ModelParams<Real> final_params; // after the last completed epoch
    History history;
    std::size_t best_epoch = 0; // 1-based
    double best_val_auprc = 0.0;
};

namespace detail {

/// Index vectors for one epoch's loss: every pair in both orientations,
/// positives first. Labels run parallel to the indices.
template <typename Real>
struct PairBatch {
    std::vector<std::uint32_t> lhs;
    std::vector<std::uint32_t> rhs;
    std::vector<Real> labels;

    void push(std::uint32_t a, std::uint32_t b, Real label) {
        lhs.push_back(a);
        rhs.push_back(b);
        labels.push_back(label);
        lhs.push_back(b);
        rhs.push_back(a);
        labels.push_back(label);
    }
};

} // namespace detail

/// Full-batch training: each epoch resamples the negative pairs, rebuilds
/// the forward graph, takes one Adam step on the summed BCE over all train
/// pairs (both orientations), and evaluates the frozen validation split.
/// Early-stops once validation AUPRC has not improved for more than
/// `patience` consecutive epochs; returns the best-validation parameters.
template <typename Real>
TrainResult<Real> train(const Graph& graph, const EdgeSplit& split, const TrainConfig& config) {
    config.validate();
    const EncoderConfig enc = config.encoder();
    const GraphMatrices<Real> mats(graph);
    const OneHotFeatures feats = one_hot_features(graph.n);

    TrainResult<Real> result;
    ModelParams<Real> params = init_params<Real>(graph.n, enc, config.seed);
    auto param_ptrs = params.parameter_list();
    AdamState<Real> adam = AdamState<Real>::for_params(param_ptrs);

    EdgeList frozen_negatives = split.val_neg;
    frozen_negatives.insert(frozen_negatives.end(), split.test_neg.begin(), split.test_neg.end());

    const std::size_t negatives_per_epoch = static_cast<std::size_t>(
        std::llround(config.negative_ratio * static_cast<double>(split.train_pos.size())));

    std::size_t epochs_without_improvement = 0;
    for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
        const auto t_start = std::chrono::steady_clock::now();

        const EdgeList negatives =
            sample_negatives(graph, negatives_per_epoch,
                             mix_seed(mix_seed(config.seed, seed_stream::train_negatives), epoch),
                             frozen_negatives);

        detail::PairBatch<Real> batch;
        batch.lhs.reserve(2 * (split.train_pos.size() + negatives.size()));
        for (const auto& [a, b] : split.train_pos) batch.push(a, b, Real{1});
        for (const auto& [a, b] : negatives) batch.push(a, b, Real{0});

        Tape<Real> tape;
        std::vector<typename Tape<Real>::ValueId> weight_ids;
        std::vector<typename Tape<Real>::ValueId> param_ids;
        for (const auto& layer : params.layers) {
            weight_ids.push_back(tape.parameter(layer.weight));
            param_ids.push_back(weight_ids.back());
        }
        const auto wp_id = tape.parameter(params.predictor.weight);
        const auto bias_id = tape.parameter(params.predictor.bias);
        param_ids.push_back(wp_id);
        param_ids.push_back(bias_id);

        const auto encoded = encode(tape, mats, feats, weight_ids, enc);
        const auto logits = tape.pair_logits(encoded.embeddings, batch.lhs, batch.rhs, wp_id, bias_id);
        const auto loss_id = tape.bce_with_logits(logits, batch.labels);

        const double loss = static_cast<double>(tape.value(loss_id).at(0, 0));
        if (!std::isfinite(loss)) {
            throw DivergenceError("training diverged: loss is not finite at epoch " +
                                  std::to_string(epoch) + " (seed " + std::to_string(config.seed) +
                                  ", lr " + std::to_string(config.learning_rate) + ")");
        }

        tape.backward(loss_id);
        std::vector<const DenseMatrix<Real>*> grads;
        grads.reserve(param_ids.size());
        for (const auto id : param_ids) grads.push_back(&tape.grad(id));
        adam_step(param_ptrs, grads, adam, static_cast<Real>(config.learning_rate));

        const EvalResult val = evaluate(graph, mats, params, enc, split, SplitPart::Val);

        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        result.history.push_back({epoch, loss, val.auprc, val.auroc, seconds});

        if (val.auprc > result.best_val_auprc || result.best_epoch == 0) {
            result.best_val_auprc = val.auprc;
            result.best_epoch = epoch;
            result.best_params = params;
            epochs_without_improvement = 0;
        } else {
            ++epochs_without_improvement;
            if (epochs_without_improvement > config.patience) {
                break;
            }
        }
    }
    result.final_params = std::move(params);
    return result;
}

} // namespace resmgcn
