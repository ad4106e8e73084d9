#pragma once

#include "resmgcn/sparse_matrix.hpp"

#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace resmgcn {

/// Undirected interaction graph. Node ids are dense and 0-based; the raw
/// ids from the input file are kept for reporting. Degrees include the
/// self-loop (neighbor count + 1), matching the normalized adjacency.
struct Graph {
    std::size_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges; // canonical i<j, sorted, unique
    std::vector<std::uint32_t> degree;                          // |N(i)| + 1
    std::vector<std::int64_t> raw_ids;                          // dense id -> raw id

    // neighbor lists in CSR form, no self entries, columns sorted
    std::vector<std::size_t> nbr_ptr;
    std::vector<std::uint32_t> nbr;

    std::size_t num_edges() const { return edges.size(); }
    double average_degree() const {
        return n == 0 ? 0.0 : 2.0 * static_cast<double>(edges.size()) / static_cast<double>(n);
    }

    /// Canonical hash key of an unordered pair.
    std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) const {
        const std::uint64_t lo = a < b ? a : b;
        const std::uint64_t hi = a < b ? b : a;
        return lo * static_cast<std::uint64_t>(n) + hi;
    }

    std::unordered_set<std::uint64_t> edge_key_set() const;

    bool topology_equals(const Graph& other) const {
        return n == other.n && edges == other.edges && degree == other.degree;
    }
};

/// Builds a Graph from canonicalized edges. `raw_ids` may be empty, in which
/// case dense ids are their own raw ids.
Graph make_graph(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                 std::vector<std::int64_t> raw_ids = {});

/// Reads a two-column integer edge list (whitespace- or tab-separated,
/// '#' comment lines and blank lines skipped, extra columns ignored).
/// Raw ids are remapped to dense 0-based ids in order of first appearance;
/// duplicate and reversed edges collapse to one; self-loop lines are dropped
/// (the normalization adds its own self-loops).
Graph load_edge_list(const std::string& path);

/// Writes the canonical (dense-id) edge list; load_edge_list of the result
/// reproduces the same topology.
void save_edge_list(const Graph& graph, const std::string& path);

/// One-hot initial node features: logically the n x n identity, physically
/// just a marker telling the first encoder layer to read its weight rows
/// directly. No n x n buffer is ever allocated.
struct OneHotFeatures {
    std::size_t n = 0;
};

OneHotFeatures one_hot_features(std::size_t n);

/// Symmetric normalized adjacency with self-loops:
/// entry (i,j) = a_ij / sqrt(d_i * d_j) with a_ii = 1 and d the self-loop
/// inclusive degree. Entries lie in (0, 1]; row i holds degree[i] nonzeros.
template <typename Real>
SparseMatrix<Real> normalize_adjacency(const Graph& graph) {
    SparseMatrix<Real> z;
    z.n = graph.n;
    z.row_ptr.assign(graph.n + 1, 0);
    std::vector<Real> inv_sqrt(graph.n);
    for (std::size_t i = 0; i < graph.n; ++i) {
        inv_sqrt[i] = Real{1} / std::sqrt(static_cast<Real>(graph.degree[i]));
    }
    z.col_idx.reserve(graph.nbr.size() + graph.n);
    z.vals.reserve(graph.nbr.size() + graph.n);
    for (std::size_t i = 0; i < graph.n; ++i) {
        bool self_emitted = false;
        for (std::size_t k = graph.nbr_ptr[i]; k < graph.nbr_ptr[i + 1]; ++k) {
            const std::uint32_t j = graph.nbr[k];
            if (!self_emitted && j > i) {
                z.col_idx.push_back(static_cast<std::uint32_t>(i));
                z.vals.push_back(inv_sqrt[i] * inv_sqrt[i]);
                self_emitted = true;
            }
            z.col_idx.push_back(j);
            z.vals.push_back(inv_sqrt[i] * inv_sqrt[j]);
        }
        if (!self_emitted) {
            z.col_idx.push_back(static_cast<std::uint32_t>(i));
            z.vals.push_back(inv_sqrt[i] * inv_sqrt[i]);
        }
        z.row_ptr[i + 1] = z.col_idx.size();
    }
    return z;
}

/// Structure-only adjacency (no self-loops, unit values); the message step
/// iterates it with per-source scaling.
template <typename Real>
SparseMatrix<Real> plain_adjacency(const Graph& graph) {
    SparseMatrix<Real> a;
    a.n = graph.n;
    a.row_ptr.assign(graph.nbr_ptr.begin(), graph.nbr_ptr.end());
    a.col_idx = graph.nbr;
    a.vals.assign(graph.nbr.size(), Real{1});
    return a;
}

/// Run-constant matrices derived from a Graph, shared by every forward pass.
template <typename Real>
struct GraphMatrices {
    SparseMatrix<Real> z_hat;
    SparseMatrix<Real> adjacency;
    std::vector<Real> inv_sqrt_degree;

    explicit GraphMatrices(const Graph& graph)
        : z_hat(normalize_adjacency<Real>(graph)), adjacency(plain_adjacency<Real>(graph)) {
        inv_sqrt_degree.resize(graph.n);
        for (std::size_t i = 0; i < graph.n; ++i) {
            inv_sqrt_degree[i] = Real{1} / std::sqrt(static_cast<Real>(graph.degree[i]));
        }
    }
};

} // namespace resmgcn
