#pragma once

#include "resmgcn/edge_split.hpp"
#include "resmgcn/metrics.hpp"
#include "resmgcn/model.hpp"
#include "resmgcn/util.hpp"

namespace resmgcn {

enum class SplitPart { Train, Val, Test };

inline std::string split_part_name(SplitPart p) {
    switch (p) {
        case SplitPart::Train: return "train";
        case SplitPart::Val: return "val";
        case SplitPart::Test: return "test";
    }
    return "?";
}

struct EvalResult {
    double auprc = 0.0;
    double auroc = 0.0;
};

/// Scores the requested split's frozen positives and negatives with the
/// symmetrized predictor. Val and test use the split's frozen negatives;
/// the train part (overfit diagnostics) samples its negatives
/// deterministically from the split seed, since training negatives are
/// per-epoch and never frozen.
template <typename Real>
ScoredPairs score_split(const Graph& graph, const GraphMatrices<Real>& mats,
                        const ModelParams<Real>& params, const EncoderConfig& cfg,
                        const EdgeSplit& split, SplitPart part) {
    const DenseMatrix<Real> h = encode_features(mats, params, cfg);

    const EdgeList* pos = nullptr;
    EdgeList train_negatives;
    const EdgeList* neg = nullptr;
    switch (part) {
        case SplitPart::Val:
            pos = &split.val_pos;
            neg = &split.val_neg;
            break;
        case SplitPart::Test:
            pos = &split.test_pos;
            neg = &split.test_neg;
            break;
        case SplitPart::Train: {
            pos = &split.train_pos;
            EdgeList exclude = split.val_neg;
            exclude.insert(exclude.end(), split.test_neg.begin(), split.test_neg.end());
            train_negatives =
                sample_negatives(graph, split.train_pos.size(),
                                 mix_seed(split.seed, seed_stream::train_eval_negatives), exclude);
            neg = &train_negatives;
            break;
        }
    }

    ScoredPairs sp;
    sp.scores.reserve(pos->size() + neg->size());
    for (const auto& [a, b] : *pos) {
        sp.push(predict_pair(h, a, b, params.predictor), true);
    }
    for (const auto& [a, b] : *neg) {
        sp.push(predict_pair(h, a, b, params.predictor), false);
    }
    return sp;
}

template <typename Real>
EvalResult evaluate(const Graph& graph, const GraphMatrices<Real>& mats,
                    const ModelParams<Real>& params, const EncoderConfig& cfg,
                    const EdgeSplit& split, SplitPart part) {
    const ScoredPairs sp = score_split(graph, mats, params, cfg, split, part);
    return {auprc(sp), auroc(sp)};
}

} // namespace resmgcn
