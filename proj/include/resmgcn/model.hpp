#pragma once

#include "resmgcn/errors.hpp"
#include "resmgcn/graph.hpp"
#include "resmgcn/tape.hpp"
#include "resmgcn/util.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace resmgcn {

enum class Arch { Gcn, ResMgcn };

/// How the current message is combined with the previous layer's message.
/// CurrentOnly drops the residue, which reduces the layer to plain GCN.
enum class Fusion { MeanWithPrevious, CurrentOnly };

inline std::string arch_name(Arch a) { return a == Arch::Gcn ? "gcn" : "resmgcn"; }

inline Arch arch_from_name(const std::string& name) {
    if (name == "gcn") return Arch::Gcn;
    if (name == "resmgcn") return Arch::ResMgcn;
    throw ConfigError("unknown architecture: " + name);
}

/// One encoder layer's weights. Layer 1 maps n -> h (one-hot features make
/// X*W a row read of W); layers >= 2 map h -> h, which the message fusion
/// requires anyway.
template <typename Real>
struct LayerParams {
    DenseMatrix<Real> weight;
};

/// Link predictor: p = sigmoid(concat(h_i, h_j) . weight + bias).
template <typename Real>
struct PredictorParams {
    DenseMatrix<Real> weight; // (2h x 1)
    DenseMatrix<Real> bias;   // (1 x 1)
};

template <typename Real>
struct ModelParams {
    std::vector<LayerParams<Real>> layers;
    PredictorParams<Real> predictor;

    std::size_t hidden() const { return layers.empty() ? 0 : layers.front().weight.cols(); }

    /// Flat list of every trainable matrix, the order the optimizer sees.
    std::vector<DenseMatrix<Real>*> parameter_list() {
        std::vector<DenseMatrix<Real>*> out;
        for (auto& layer : layers) out.push_back(&layer.weight);
        out.push_back(&predictor.weight);
        out.push_back(&predictor.bias);
        return out;
    }

    bool all_finite() const {
        for (const auto& layer : layers) {
            if (!layer.weight.all_finite()) return false;
        }
        return predictor.weight.all_finite() && predictor.bias.all_finite();
    }
};

struct EncoderConfig {
    Arch arch = Arch::ResMgcn;
    std::size_t num_layers = 2;
    std::size_t hidden = 64;
    Activation activation = Activation::Relu;
    Fusion fusion = Fusion::MeanWithPrevious;
    bool first_layer_halve = false; // halve the layer-1 message as if a zero residue existed
};

/// Variance-preserving uniform init in +-sqrt(6/(fan_in+fan_out)); bias zero.
/// The one-hot first layer is a row read of its weight, so its effective
/// fan-in is 1, not n; using n would shrink the whole forward signal toward
/// zero on large graphs.
template <typename Real>
ModelParams<Real> init_params(std::size_t n, const EncoderConfig& cfg, std::uint64_t seed) {
    if (cfg.num_layers < 1) throw ConfigError("encoder needs at least one layer");
    if (cfg.hidden < 1) throw ConfigError("hidden width must be positive");
    Rng rng(mix_seed(seed, seed_stream::init));
    ModelParams<Real> params;
    const auto uniform_matrix = [&](std::size_t rows, std::size_t cols, std::size_t fan_in,
                                    std::size_t fan_out) {
        const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        DenseMatrix<Real> m(rows, cols);
        for (std::size_t i = 0; i < m.size(); ++i) {
            m.data()[i] = static_cast<Real>(rng.uniform_real(-bound, bound));
        }
        return m;
    };
    params.layers.reserve(cfg.num_layers);
    params.layers.push_back({uniform_matrix(n, cfg.hidden, 1, cfg.hidden)});
    for (std::size_t l = 1; l < cfg.num_layers; ++l) {
        params.layers.push_back({uniform_matrix(cfg.hidden, cfg.hidden, cfg.hidden, cfg.hidden)});
    }
    params.predictor.weight = uniform_matrix(2 * cfg.hidden, 1, 2 * cfg.hidden, 1);
    params.predictor.bias = DenseMatrix<Real>(1, 1, Real{0});
    return params;
}

template <typename Real>
void check_layer_widths(const ModelParams<Real>& params, std::size_t n) {
    if (params.layers.empty()) throw ConfigError("model has no layers");
    if (params.layers.front().weight.rows() != n) {
        throw ConfigError("layer 1 expects in_dim " + std::to_string(n) + ", got " +
                          std::to_string(params.layers.front().weight.rows()));
    }
    const std::size_t h = params.layers.front().weight.cols();
    for (std::size_t l = 1; l < params.layers.size(); ++l) {
        const auto& w = params.layers[l].weight;
        if (w.rows() != h || w.cols() != h) {
            throw ConfigError("layer " + std::to_string(l + 1) + " must be " + std::to_string(h) +
                              "x" + std::to_string(h) + ", got " + w.shape_string());
        }
    }
    if (params.predictor.weight.rows() != 2 * h || params.predictor.weight.cols() != 1) {
        throw ConfigError("predictor weight must be " + std::to_string(2 * h) + "x1, got " +
                          params.predictor.weight.shape_string());
    }
}

// ---------------------------------------------------------------------------
// Tape-side forward definitions
// ---------------------------------------------------------------------------

/// Spectral GCN layer: X' = act(Zhat * (X * W)). `projected` is X*W, or W
/// itself for the one-hot first layer.
template <typename Real>
typename Tape<Real>::ValueId gcn_layer_forward(Tape<Real>& tape, const GraphMatrices<Real>& mats,
                                               typename Tape<Real>::ValueId projected,
                                               Activation act) {
    const auto aggregated = tape.spmm(mats.z_hat, projected);
    return tape.activation(act, aggregated);
}

/// Message-residue layer. Computes this layer's neighbor message, fuses it
/// with the previous layer's (mean), and updates each node with its own
/// degree-scaled projection:
///   m[i]  = sum_{j in N(i)} d_j^-1/2 * P[j]
///   c     = 0.5 * (m + m_prev)          (layer 1: c = m)
///   x'[i] = act(d_i^-1/2 * (c[i] + d_i^-1/2 * P[i]))
template <typename Real>
struct ResLayerOut {
    typename Tape<Real>::ValueId output;
    typename Tape<Real>::ValueId message;
};

template <typename Real>
ResLayerOut<Real> resmgcn_layer_forward(Tape<Real>& tape, const GraphMatrices<Real>& mats,
                                        typename Tape<Real>::ValueId projected,
                                        std::optional<typename Tape<Real>::ValueId> prev_message,
                                        Activation act, Fusion fusion = Fusion::MeanWithPrevious,
                                        bool halve_first = false) {
    const auto message = tape.neighbor_messages(mats.adjacency, mats.inv_sqrt_degree, projected);
    if (fusion == Fusion::MeanWithPrevious && prev_message.has_value()) {
        if (!tape.value(*prev_message).same_shape(tape.value(message))) {
            throw ShapeError("message cache " + tape.value(*prev_message).shape_string() +
                             " vs current message " + tape.value(message).shape_string());
        }
        const auto output = tape.node_update_fused(message, *prev_message, projected,
                                                   mats.inv_sqrt_degree, act);
        return {output, message};
    }
    typename Tape<Real>::ValueId combined = message;
    if (fusion == Fusion::MeanWithPrevious && halve_first) {
        combined = tape.scale(message, Real{0.5});
    }
    const auto output = tape.node_update(combined, projected, mats.inv_sqrt_degree, act);
    return {output, message};
}

/// What encode() built, with enough structure for buffer accounting.
template <typename Real>
struct EncodeResult {
    typename Tape<Real>::ValueId embeddings;
    std::vector<typename Tape<Real>::ValueId> layer_outputs;
    // [begin, end) tape value-id range created by each layer
    std::vector<std::pair<std::size_t, std::size_t>> layer_value_ranges;
    std::size_t values_before = 0; // tape size before encode started
    std::size_t values_after = 0;

    /// Intermediate buffers of the given shape a layer put on the tape;
    /// the unit of the extra-memory claim versus plain GCN.
    std::size_t layer_buffers_with_shape(const Tape<Real>& tape, std::size_t layer,
                                         std::size_t rows, std::size_t cols) const {
        std::size_t count = 0;
        for (std::size_t id = layer_value_ranges[layer].first;
             id < layer_value_ranges[layer].second; ++id) {
            const auto& v = tape.value(static_cast<typename Tape<Real>::ValueId>(id));
            if (v.rows() == rows && v.cols() == cols) ++count;
        }
        return count;
    }
};

/// Stacks layers over one-hot features, threading the message cache.
/// `layer_weights` are the tape ids of the per-layer weight parameters.
template <typename Real>
EncodeResult<Real> encode(Tape<Real>& tape, const GraphMatrices<Real>& mats, OneHotFeatures feats,
                          const std::vector<typename Tape<Real>::ValueId>& layer_weights,
                          const EncoderConfig& cfg) {
    if (feats.n != mats.z_hat.n) {
        throw ConfigError("feature provider is for " + std::to_string(feats.n) +
                          " nodes, graph has " + std::to_string(mats.z_hat.n));
    }
    if (layer_weights.empty()) throw ConfigError("encode: no layers");

    EncodeResult<Real> result;
    result.values_before = tape.num_values();

    std::optional<typename Tape<Real>::ValueId> cache;
    typename Tape<Real>::ValueId x = layer_weights[0]; // one-hot: X*W1 is W1 itself
    for (std::size_t l = 0; l < layer_weights.size(); ++l) {
        const std::size_t layer_begin = tape.num_values();
        const auto projected = l == 0 ? layer_weights[0] : tape.matmul(x, layer_weights[l]);
        if (cfg.arch == Arch::Gcn) {
            x = gcn_layer_forward(tape, mats, projected, cfg.activation);
        } else {
            auto out = resmgcn_layer_forward(tape, mats, projected, cache, cfg.activation,
                                             cfg.fusion, cfg.first_layer_halve);
            x = out.output;
            cache = out.message;
        }
        result.layer_outputs.push_back(x);
        result.layer_value_ranges.emplace_back(layer_begin, tape.num_values());
    }
    result.embeddings = x;
    result.values_after = tape.num_values();
    return result;
}

// ---------------------------------------------------------------------------
// Forward-only path (evaluation / scoring; no tape, minimal buffers)
// ---------------------------------------------------------------------------

template <typename Real>
DenseMatrix<Real> encode_features(const GraphMatrices<Real>& mats, const ModelParams<Real>& params,
                                  const EncoderConfig& cfg) {
    const std::size_t n = mats.z_hat.n;
    check_layer_widths(params, n);
    const std::size_t h = params.hidden();

    DenseMatrix<Real> x;         // current representation
    DenseMatrix<Real> projected(n, h);
    DenseMatrix<Real> message(n, h);
    DenseMatrix<Real> cache; // previous layer's message

    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        const DenseMatrix<Real>* proj = &projected;
        if (l == 0) {
            proj = &params.layers[0].weight;
        } else {
            kernels::matmul(projected, x, params.layers[l].weight);
        }
        if (cfg.arch == Arch::Gcn) {
            if (x.empty()) x = DenseMatrix<Real>(n, h);
            kernels::spmm(x, mats.z_hat, *proj);
            for (std::size_t i = 0; i < x.size(); ++i) {
                x.data()[i] = apply_activation(cfg.activation, x.data()[i]);
            }
        } else {
            kernels::neighbor_scaled(message, mats.adjacency, mats.inv_sqrt_degree, *proj);
            if (x.empty()) x = DenseMatrix<Real>(n, h);
            const bool fuse = cfg.fusion == Fusion::MeanWithPrevious && !cache.empty();
            const bool halve = cfg.fusion == Fusion::MeanWithPrevious && cache.empty() &&
                               cfg.first_layer_halve && l == 0;
            for (std::size_t i = 0; i < n; ++i) {
                const Real s = mats.inv_sqrt_degree[i];
                for (std::size_t c = 0; c < h; ++c) {
                    Real m = message.at(i, c);
                    if (fuse) m = (m + cache.at(i, c)) * Real{0.5};
                    if (halve) m = m * Real{0.5};
                    x.at(i, c) = apply_activation(cfg.activation, s * (m + s * proj->at(i, c)));
                }
            }
            std::swap(cache, message);
            if (message.empty()) message = DenseMatrix<Real>(n, h);
        }
    }
    return x;
}

/// Orientation-symmetrized interaction probability:
/// 0.5 * (sigmoid(concat(h_i,h_j).Wp + b) + sigmoid(concat(h_j,h_i).Wp + b)).
template <typename Real>
double predict_pair(const DenseMatrix<Real>& h, std::size_t i, std::size_t j,
                    const PredictorParams<Real>& pred) {
    if (i >= h.rows() || j >= h.rows()) {
        throw ContractError("predict_pair: node index out of range");
    }
    const std::size_t width = h.cols();
    if (pred.weight.rows() != 2 * width || pred.weight.cols() != 1) {
        throw ShapeError("predict_pair: weight " + pred.weight.shape_string() +
                         " for embedding width " + std::to_string(width));
    }
    const Real* w_top = pred.weight.data();
    const Real* w_bottom = pred.weight.data() + width;
    const Real bias = pred.bias.at(0, 0);
    double logit_ij = static_cast<double>(bias);
    double logit_ji = static_cast<double>(bias);
    for (std::size_t c = 0; c < width; ++c) {
        logit_ij += static_cast<double>(h.at(i, c)) * static_cast<double>(w_top[c]) +
                    static_cast<double>(h.at(j, c)) * static_cast<double>(w_bottom[c]);
        logit_ji += static_cast<double>(h.at(j, c)) * static_cast<double>(w_top[c]) +
                    static_cast<double>(h.at(i, c)) * static_cast<double>(w_bottom[c]);
    }
    return 0.5 * (kernels::stable_sigmoid(logit_ij) + kernels::stable_sigmoid(logit_ji));
}

/// Symmetrized probabilities for a batch of pairs over frozen embeddings.
template <typename Real>
std::vector<double> score_pairs(const DenseMatrix<Real>& h,
                                const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                                const PredictorParams<Real>& pred) {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        out.push_back(predict_pair(h, a, b, pred));
    }
    return out;
}

} // namespace resmgcn
