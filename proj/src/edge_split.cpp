#include "resmgcn/edge_split.hpp"

#include "resmgcn/errors.hpp"
#include "resmgcn/util.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace resmgcn {

namespace {

std::uint64_t canonical_key(std::size_t n, std::uint32_t a, std::uint32_t b) {
    const std::uint64_t lo = a < b ? a : b;
    const std::uint64_t hi = a < b ? b : a;
    return lo * static_cast<std::uint64_t>(n) + hi;
}

bool pair_allowed(std::uint32_t a, std::uint32_t b, const std::vector<std::uint8_t>* partition) {
    return partition == nullptr || (*partition)[a] != (*partition)[b];
}

} // namespace

SplitCounts split_counts(std::size_t num_edges) {
    SplitCounts c;
    c.val = (num_edges + 9) / 10;
    c.test = num_edges / 5;
    c.train = num_edges - c.val - c.test;
    return c;
}

std::optional<std::vector<std::uint8_t>> bipartite_partition(const Graph& graph) {
    std::vector<std::uint8_t> color(graph.n, 2); // 2 = unvisited
    std::deque<std::uint32_t> queue;
    for (std::uint32_t root = 0; root < graph.n; ++root) {
        if (color[root] != 2) continue;
        color[root] = 0;
        queue.push_back(root);
        while (!queue.empty()) {
            const std::uint32_t u = queue.front();
            queue.pop_front();
            for (std::size_t k = graph.nbr_ptr[u]; k < graph.nbr_ptr[u + 1]; ++k) {
                const std::uint32_t v = graph.nbr[k];
                if (color[v] == 2) {
                    color[v] = static_cast<std::uint8_t>(1 - color[u]);
                    queue.push_back(v);
                } else if (color[v] == color[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

EdgeList sample_negatives(const Graph& graph, std::size_t k, std::uint64_t seed,
                          const EdgeList& exclude, const std::vector<std::uint8_t>* partition) {
    const std::size_t n = graph.n;
    if (n < 2 && k > 0) {
        throw DataError("sample_negatives: no candidate pairs in a graph of " +
                        std::to_string(n) + " node(s)");
    }

    std::unordered_set<std::uint64_t> blocked = graph.edge_key_set();
    for (const auto& [a, b] : exclude) {
        if (a != b) blocked.insert(canonical_key(n, a, b));
    }

    // Exact candidate count, so the insufficient-candidates error is reliable.
    std::uint64_t total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::uint64_t candidates;
    if (partition == nullptr) {
        candidates = total_pairs - blocked.size();
    } else {
        std::uint64_t zeros = 0;
        for (std::uint8_t c : *partition) zeros += (c == 0);
        std::uint64_t cross = zeros * (static_cast<std::uint64_t>(n) - zeros);
        std::uint64_t blocked_cross = 0;
        for (std::uint64_t key : blocked) {
            const auto a = static_cast<std::uint32_t>(key / n);
            const auto b = static_cast<std::uint32_t>(key % n);
            blocked_cross += pair_allowed(a, b, partition);
        }
        candidates = cross - blocked_cross;
    }
    if (k > candidates) {
        throw DataError("sample_negatives: requested " + std::to_string(k) + " negatives, only " +
                        std::to_string(candidates) + " non-edges available");
    }

    Rng rng(seed);
    EdgeList out;
    out.reserve(k);
    std::unordered_set<std::uint64_t> drawn;
    drawn.reserve(k * 2);

    // Rejection sampling while the candidate space is sparse-ish; otherwise
    // enumerate and take a seeded partial shuffle.
    if (k * 4 <= candidates) {
        while (out.size() < k) {
            const auto a = static_cast<std::uint32_t>(rng.uniform_index(n));
            const auto b = static_cast<std::uint32_t>(rng.uniform_index(n));
            if (a == b || !pair_allowed(a, b, partition)) continue;
            const std::uint64_t key = canonical_key(n, a, b);
            if (blocked.contains(key) || drawn.contains(key)) continue;
            drawn.insert(key);
            out.emplace_back(std::min(a, b), std::max(a, b));
        }
    } else {
        EdgeList pool;
        pool.reserve(static_cast<std::size_t>(candidates));
        for (std::uint32_t a = 0; a + 1 < n; ++a) {
            for (std::uint32_t b = a + 1; b < n; ++b) {
                if (!pair_allowed(a, b, partition)) continue;
                if (blocked.contains(canonical_key(n, a, b))) continue;
                pool.emplace_back(a, b);
            }
        }
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(pool.size() - i));
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
    }
    return out;
}

EdgeSplit split_edges(const Graph& graph, std::uint64_t seed, bool bipartite_negatives) {
    if (graph.num_edges() < 10) {
        throw DataError("split_edges: need at least 10 edges, got " +
                        std::to_string(graph.num_edges()));
    }
    const SplitCounts counts = split_counts(graph.num_edges());

    EdgeList shuffled = graph.edges;
    Rng rng(mix_seed(seed, seed_stream::split));
    rng.shuffle(shuffled);

    EdgeSplit split;
    split.seed = seed;
    split.train_pos.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(counts.train));
    split.val_pos.assign(shuffled.begin() + static_cast<std::ptrdiff_t>(counts.train),
                         shuffled.begin() + static_cast<std::ptrdiff_t>(counts.train + counts.val));
    split.test_pos.assign(shuffled.begin() + static_cast<std::ptrdiff_t>(counts.train + counts.val),
                          shuffled.end());

    std::optional<std::vector<std::uint8_t>> partition;
    if (bipartite_negatives) {
        partition = bipartite_partition(graph);
        if (!partition) {
            throw DataError("split_edges: graph is not bipartite, cannot restrict negatives");
        }
    }
    const std::vector<std::uint8_t>* part_ptr = partition ? &*partition : nullptr;
    split.val_neg = sample_negatives(graph, split.val_pos.size(),
                                     mix_seed(seed, seed_stream::val_negatives), {}, part_ptr);
    split.test_neg = sample_negatives(graph, split.test_pos.size(),
                                      mix_seed(seed, seed_stream::test_negatives), split.val_neg,
                                      part_ptr);
    return split;
}

} // namespace resmgcn
