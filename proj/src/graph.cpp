#include "resmgcn/graph.hpp"

#include "resmgcn/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_map>

namespace resmgcn {

namespace {

// Parses the first two integer tokens of a line; returns false for
// blank/comment lines, throws ParseError for anything else malformed.
bool parse_edge_line(std::string_view line, std::size_t line_number, std::int64_t& u,
                     std::int64_t& v) {
    std::size_t pos = 0;
    const auto skip_ws = [&] {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
            ++pos;
        }
    };
    skip_ws();
    if (pos == line.size() || line[pos] == '#') return false;

    std::int64_t* targets[2] = {&u, &v};
    for (auto* target : targets) {
        skip_ws();
        const std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') {
            ++pos;
        }
        if (start == pos) {
            throw ParseError("expected two integer columns", line_number);
        }
        const auto token = line.substr(start, pos - start);
        auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), *target);
        if (ec != std::errc{} || end != token.data() + token.size()) {
            throw ParseError("not an integer: '" + std::string(token) + "'", line_number);
        }
    }
    return true;
}

} // namespace

std::unordered_set<std::uint64_t> Graph::edge_key_set() const {
    std::unordered_set<std::uint64_t> keys;
    keys.reserve(edges.size() * 2);
    for (const auto& [a, b] : edges) {
        keys.insert(pair_key(a, b));
    }
    return keys;
}

Graph make_graph(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                 std::vector<std::int64_t> raw_ids) {
    Graph g;
    g.n = n;
    for (auto& [a, b] : edges) {
        if (a == b) throw DataError("make_graph: self-edge " + std::to_string(a));
        if (a >= n || b >= n) throw DataError("make_graph: node id out of range");
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);

    if (raw_ids.empty()) {
        g.raw_ids.resize(n);
        for (std::size_t i = 0; i < n; ++i) g.raw_ids[i] = static_cast<std::int64_t>(i);
    } else {
        if (raw_ids.size() != n) throw DataError("make_graph: raw id map size mismatch");
        g.raw_ids = std::move(raw_ids);
    }

    std::vector<std::uint32_t> counts(n, 0);
    for (const auto& [a, b] : g.edges) {
        ++counts[a];
        ++counts[b];
    }
    g.nbr_ptr.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        g.nbr_ptr[i + 1] = g.nbr_ptr[i] + counts[i];
    }
    g.nbr.resize(g.nbr_ptr[n]);
    std::vector<std::size_t> cursor(g.nbr_ptr.begin(), g.nbr_ptr.end() - 1);
    for (const auto& [a, b] : g.edges) {
        g.nbr[cursor[a]++] = b;
        g.nbr[cursor[b]++] = a;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(g.nbr.begin() + static_cast<std::ptrdiff_t>(g.nbr_ptr[i]),
                  g.nbr.begin() + static_cast<std::ptrdiff_t>(g.nbr_ptr[i + 1]));
    }
    g.degree.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.degree[i] = static_cast<std::uint32_t>(g.nbr_ptr[i + 1] - g.nbr_ptr[i]) + 1;
    }
    return g;
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open edge list: " + path);
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> raw_edges;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::int64_t u = 0, v = 0;
        if (!parse_edge_line(line, line_number, u, v)) continue;
        raw_edges.emplace_back(u, v);
    }

    // Dense ids follow sorted raw-id order, so the mapping is independent of
    // line order and a saved canonical edge list reloads to the same Graph.
    std::vector<std::int64_t> raw_ids;
    raw_ids.reserve(raw_edges.size() * 2);
    for (const auto& [u, v] : raw_edges) {
        raw_ids.push_back(u);
        raw_ids.push_back(v);
    }
    std::sort(raw_ids.begin(), raw_ids.end());
    raw_ids.erase(std::unique(raw_ids.begin(), raw_ids.end()), raw_ids.end());
    std::unordered_map<std::int64_t, std::uint32_t> dense_of_raw;
    dense_of_raw.reserve(raw_ids.size() * 2);
    for (std::size_t i = 0; i < raw_ids.size(); ++i) {
        dense_of_raw.emplace(raw_ids[i], static_cast<std::uint32_t>(i));
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(raw_edges.size());
    for (const auto& [u, v] : raw_edges) {
        if (u == v) continue; // self-loops come from the normalization, not the data
        edges.emplace_back(dense_of_raw.at(u), dense_of_raw.at(v));
    }
    if (edges.empty()) {
        throw DataError("edge list has no edges: " + path);
    }
    const std::size_t n = raw_ids.size();
    return make_graph(n, std::move(edges), std::move(raw_ids));
}

void save_edge_list(const Graph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write edge list: " + path);
    }
    for (const auto& [a, b] : graph.edges) {
        out << a << '\t' << b << '\n';
    }
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

OneHotFeatures one_hot_features(std::size_t n) {
    if (n == 0) {
        throw DataError("one_hot_features: empty graph");
    }
    return OneHotFeatures{n};
}

} // namespace resmgcn
