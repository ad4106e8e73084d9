#pragma once

#include "resmgcn/model.hpp"
#include "resmgcn/training.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace resmgcn {

/// On-disk model container (versioned JSON): layer shapes and weights, the
/// predictor, the raw-node-id mapping and the split seed, plus enough of
/// the config to rebuild the encoder exactly.
struct Checkpoint {
    static constexpr int current_version = 1;

    int version = current_version;
    Arch arch = Arch::ResMgcn;
    Activation activation = Activation::Relu;
    bool first_layer_halve = false;
    FloatMode float_mode = FloatMode::F64;
    std::size_t hidden = 0;
    std::size_t num_layers = 0;
    std::size_t n = 0;
    std::uint64_t split_seed = 0;
    std::uint64_t init_seed = 0;
    std::string dataset_hash; // empty when unknown (hand-built checkpoints)
    bool bipartite_negatives = false;
    std::size_t epochs_trained = 0;
    std::size_t best_epoch = 0;
    double best_val_auprc = 0.0;
    std::vector<std::int64_t> raw_ids;

    // weights, always stored as f64
    std::vector<DenseMatrix<double>> layer_weights;
    DenseMatrix<double> predictor_weight;
    double predictor_bias = 0.0;

    EncoderConfig encoder() const {
        return EncoderConfig{arch,       num_layers, hidden, activation,
                             Fusion::MeanWithPrevious, first_layer_halve};
    }

    template <typename Real>
    ModelParams<Real> params() const {
        ModelParams<Real> p;
        for (const auto& w : layer_weights) {
            DenseMatrix<Real> m(w.rows(), w.cols());
            for (std::size_t i = 0; i < w.size(); ++i) {
                m.data()[i] = static_cast<Real>(w.data()[i]);
            }
            p.layers.push_back({std::move(m)});
        }
        DenseMatrix<Real> wp(predictor_weight.rows(), predictor_weight.cols());
        for (std::size_t i = 0; i < wp.size(); ++i) {
            wp.data()[i] = static_cast<Real>(predictor_weight.data()[i]);
        }
        p.predictor.weight = std::move(wp);
        p.predictor.bias = DenseMatrix<Real>(1, 1, static_cast<Real>(predictor_bias));
        return p;
    }

    template <typename Real>
    void set_params(const ModelParams<Real>& p) {
        layer_weights.clear();
        for (const auto& layer : p.layers) {
            DenseMatrix<double> w(layer.weight.rows(), layer.weight.cols());
            for (std::size_t i = 0; i < w.size(); ++i) {
                w.data()[i] = static_cast<double>(layer.weight.data()[i]);
            }
            layer_weights.push_back(std::move(w));
        }
        predictor_weight = DenseMatrix<double>(p.predictor.weight.rows(), p.predictor.weight.cols());
        for (std::size_t i = 0; i < predictor_weight.size(); ++i) {
            predictor_weight.data()[i] = static_cast<double>(p.predictor.weight.data()[i]);
        }
        predictor_bias = static_cast<double>(p.predictor.bias.at(0, 0));
        num_layers = p.layers.size();
        hidden = p.hidden();
    }
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

/// Writes `content` to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace resmgcn
