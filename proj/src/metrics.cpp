#include "resmgcn/metrics.hpp"

#include "resmgcn/errors.hpp"

#include <algorithm>
#include <numeric>

namespace resmgcn {

namespace {

struct ClassCounts {
    std::size_t pos = 0;
    std::size_t neg = 0;
};

ClassCounts count_classes(const ScoredPairs& sp) {
    if (sp.scores.size() != sp.labels.size()) {
        throw MetricError("scores and labels differ in length");
    }
    ClassCounts c;
    for (std::uint8_t l : sp.labels) {
        if (l) {
            ++c.pos;
        } else {
            ++c.neg;
        }
    }
    return c;
}

/// Indices sorted by descending score; equal scores stay adjacent and are
/// consumed block-wise by both metrics.
std::vector<std::size_t> descending_order(const ScoredPairs& sp) {
    std::vector<std::size_t> order(sp.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return sp.scores[a] > sp.scores[b];
    });
    return order;
}

template <typename BlockFn>
void for_each_block(const ScoredPairs& sp, const std::vector<std::size_t>& order, BlockFn&& fn) {
    std::size_t begin = 0;
    while (begin < order.size()) {
        std::size_t end = begin + 1;
        while (end < order.size() && sp.scores[order[end]] == sp.scores[order[begin]]) {
            ++end;
        }
        std::size_t block_pos = 0;
        for (std::size_t k = begin; k < end; ++k) {
            block_pos += sp.labels[order[k]];
        }
        fn(block_pos, end - begin);
        begin = end;
    }
}

} // namespace

double auroc(const ScoredPairs& sp) {
    const ClassCounts counts = count_classes(sp);
    if (counts.pos == 0 || counts.neg == 0) {
        throw MetricError("auroc undefined: needs at least one positive and one negative");
    }
    const auto order = descending_order(sp);
    // Sweep descending blocks, counting positive-over-negative pairs; ties
    // within a block contribute half.
    std::uint64_t twice_concordant = 0;
    std::size_t neg_seen = 0;
    for_each_block(sp, order, [&](std::size_t block_pos, std::size_t block_size) {
        const std::size_t block_neg = block_size - block_pos;
        const std::size_t neg_below = counts.neg - neg_seen - block_neg;
        twice_concordant += 2ULL * block_pos * neg_below + 1ULL * block_pos * block_neg;
        neg_seen += block_neg;
    });
    return static_cast<double>(twice_concordant) /
           (2.0 * static_cast<double>(counts.pos) * static_cast<double>(counts.neg));
}

double auprc(const ScoredPairs& sp) {
    const ClassCounts counts = count_classes(sp);
    if (counts.pos == 0) {
        throw MetricError("auprc undefined: needs at least one positive");
    }
    const auto order = descending_order(sp);
    // Average precision, one term per positive, tied blocks atomic: every
    // positive inside a block sees the precision at the block's lower
    // boundary.
    double sum = 0.0;
    std::size_t rank = 0;
    std::size_t tp = 0;
    for_each_block(sp, order, [&](std::size_t block_pos, std::size_t block_size) {
        rank += block_size;
        tp += block_pos;
        const double precision = static_cast<double>(tp) / static_cast<double>(rank);
        for (std::size_t k = 0; k < block_pos; ++k) {
            sum += precision;
        }
    });
    return sum / static_cast<double>(counts.pos);
}

std::vector<std::pair<double, double>> roc_points(const ScoredPairs& sp) {
    const ClassCounts counts = count_classes(sp);
    if (counts.pos == 0 || counts.neg == 0) {
        throw MetricError("roc_points undefined: needs both classes");
    }
    const auto order = descending_order(sp);
    std::vector<std::pair<double, double>> points{{0.0, 0.0}};
    std::size_t tp = 0, fp = 0;
    for_each_block(sp, order, [&](std::size_t block_pos, std::size_t block_size) {
        tp += block_pos;
        fp += block_size - block_pos;
        points.emplace_back(static_cast<double>(fp) / static_cast<double>(counts.neg),
                            static_cast<double>(tp) / static_cast<double>(counts.pos));
    });
    return points;
}

std::vector<std::pair<double, double>> pr_points(const ScoredPairs& sp) {
    const ClassCounts counts = count_classes(sp);
    if (counts.pos == 0) {
        throw MetricError("pr_points undefined: needs at least one positive");
    }
    const auto order = descending_order(sp);
    std::vector<std::pair<double, double>> points;
    std::size_t rank = 0, tp = 0;
    for_each_block(sp, order, [&](std::size_t block_pos, std::size_t block_size) {
        rank += block_size;
        tp += block_pos;
        points.emplace_back(static_cast<double>(tp) / static_cast<double>(counts.pos),
                            static_cast<double>(tp) / static_cast<double>(rank));
    });
    return points;
}

} // namespace resmgcn
