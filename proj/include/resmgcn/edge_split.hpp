#pragma once

#include "resmgcn/graph.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace resmgcn {

using EdgeList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// Deterministic 7:1:2 split of the positive edges plus frozen negative
/// samples for validation and test. Training negatives are resampled per
/// epoch by the training loop and are not part of the split.
struct EdgeSplit {
    EdgeList train_pos;
    EdgeList val_pos;
    EdgeList test_pos;
    EdgeList val_neg;  // |val_neg| == |val_pos|, sampled once, frozen
    EdgeList test_neg; // |test_neg| == |test_pos|, disjoint from val_neg
    std::uint64_t seed = 0;
};

struct SplitCounts {
    std::size_t train = 0;
    std::size_t val = 0;
    std::size_t test = 0;
};

/// 7:1:2 partition sizes: val takes ceil(E/10), test floor(E/5), train the
/// remainder.
SplitCounts split_counts(std::size_t num_edges);

/// Shuffles the canonical edge list with the seed and slices it into
/// train/val/test; samples the frozen negatives (val first, then test,
/// excluding val's). Requires at least 10 edges.
EdgeSplit split_edges(const Graph& graph, std::uint64_t seed,
                      bool bipartite_negatives = false);

/// Draws k distinct unordered non-edges of `graph`, none in `exclude`,
/// no self-pairs, deterministically for a given seed. When `partition`
/// is given, candidates are restricted to cross-partition pairs.
/// Throws DataError if fewer than k candidates exist.
EdgeList sample_negatives(const Graph& graph, std::size_t k, std::uint64_t seed,
                          const EdgeList& exclude = {},
                          const std::vector<std::uint8_t>* partition = nullptr);

/// Two-colors the graph via BFS (component roots = smallest node id of the
/// component, colored 0). Returns nullopt if any component has an odd cycle.
std::optional<std::vector<std::uint8_t>> bipartite_partition(const Graph& graph);

} // namespace resmgcn
