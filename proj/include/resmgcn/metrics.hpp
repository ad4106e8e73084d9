#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace resmgcn {

/// Scores with binary labels, the input to the ranking metrics.
struct ScoredPairs {
    std::vector<double> scores;
    std::vector<std::uint8_t> labels; // 0 or 1

    void push(double score, bool positive) {
        scores.push_back(score);
        labels.push_back(positive ? 1 : 0);
    }
    std::size_t size() const { return scores.size(); }
};

/// Area under the ROC curve as the concordant-pair probability:
/// (#(pos > neg) + 0.5 * #(pos == neg)) / (#pos * #neg).
/// Throws MetricError unless both classes are present.
double auroc(const ScoredPairs& sp);

/// Area under the precision-recall curve as average precision: the mean,
/// over positives in descending score order, of precision at that rank.
/// Tied scores form atomic blocks; precision is evaluated at block
/// boundaries. Throws MetricError if no positive is present.
double auprc(const ScoredPairs& sp);

/// ROC curve points (fpr, tpr) at every tied-score block boundary,
/// starting at (0,0) and ending at (1,1). For --emit-curves.
std::vector<std::pair<double, double>> roc_points(const ScoredPairs& sp);

/// PR curve points (recall, precision) at every tied-score block boundary.
std::vector<std::pair<double, double>> pr_points(const ScoredPairs& sp);

} // namespace resmgcn
