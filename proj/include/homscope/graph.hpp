#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "homscope/error.hpp"

namespace homscope {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1. Immutable once built.
///
/// Neighbour lists are kept sorted so `has_edge` is a binary search; no
/// adjacency matrix is stored, which keeps large hosts cheap.
class Graph {
public:
    Graph() = default;

    explicit Graph(std::size_t n) : adj_(n) {}

    /// Throws InvariantError on self-loops, duplicate edges or out-of-range endpoints.
    Graph(std::size_t n, std::span<const Edge> edges) : adj_(n)
    {
        for (auto [u, v] : edges) {
            if (u >= n || v >= n)
                throw InvariantError("edge (" + std::to_string(u) + "," + std::to_string(v)
                                     + ") has an endpoint >= vertex count " + std::to_string(n));
            if (u == v)
                throw InvariantError("self-loop at vertex " + std::to_string(u));
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (Vertex v = 0; v < n; ++v) {
            auto & nb = adj_[v];
            std::sort(nb.begin(), nb.end());
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
                throw InvariantError("duplicate edge at vertex " + std::to_string(v));
        }
        edge_count_ = edges.size();
    }

    Graph(std::size_t n, std::initializer_list<Edge> edges)
        : Graph(n, std::span<const Edge>(edges.begin(), edges.size()))
    {
    }

    std::size_t order() const noexcept { return adj_.size(); }
    std::size_t size() const noexcept { return edge_count_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
    std::size_t degree(Vertex v) const { return adj_[v].size(); }

    bool has_edge(Vertex u, Vertex v) const
    {
        const auto & a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        const Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
        return std::binary_search(a.begin(), a.end(), other);
    }

    /// Edges as (u, v) with u < v, in lexicographic order.
    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (Vertex u = 0; u < adj_.size(); ++u)
            for (Vertex v : adj_[u])
                if (u < v)
                    out.emplace_back(u, v);
        return out;
    }

    std::size_t min_degree() const
    {
        std::size_t d = std::numeric_limits<std::size_t>::max();
        for (const auto & nb : adj_)
            d = std::min(d, nb.size());
        return adj_.empty() ? 0 : d;
    }

    std::size_t max_degree() const
    {
        std::size_t d = 0;
        for (const auto & nb : adj_)
            d = std::max(d, nb.size());
        return d;
    }

    friend bool operator==(const Graph &, const Graph &) = default;

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t edge_count_ = 0;
};

/// Graph with a distinguished root vertex.
struct RootedGraph {
    Graph graph;
    Vertex root = 0;

    RootedGraph() : graph(1) {}
    RootedGraph(Graph g, Vertex r) : graph(std::move(g)), root(r)
    {
        if (r >= graph.order())
            throw InvariantError("root " + std::to_string(r) + " is not a vertex");
    }

    friend bool operator==(const RootedGraph &, const RootedGraph &) = default;
};

// ---------------------------------------------------------------------------
// Named patterns

enum class PatternKind { path, cycle, clique };

/// P_n (n vertices, n-1 edges), C_n, K_n.
inline Graph make_named_pattern(PatternKind kind, std::size_t n)
{
    if (n < 1)
        throw InvalidArgument("pattern needs at least one vertex");
    std::vector<Edge> e;
    switch (kind) {
    case PatternKind::path:
        for (Vertex i = 0; i + 1 < n; ++i)
            e.emplace_back(i, i + 1);
        break;
    case PatternKind::cycle:
        if (n < 3)
            throw InvalidArgument("cycle needs at least 3 vertices");
        for (Vertex i = 0; i < n; ++i)
            e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
        break;
    case PatternKind::clique:
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j)
                e.emplace_back(i, j);
        break;
    }
    return Graph(n, e);
}

inline Graph path_graph(std::size_t n) { return make_named_pattern(PatternKind::path, n); }
inline Graph cycle_graph(std::size_t n) { return make_named_pattern(PatternKind::cycle, n); }
inline Graph complete_graph(std::size_t n) { return make_named_pattern(PatternKind::clique, n); }
inline Graph single_vertex() { return Graph(1); }

/// Triangle {0,1,2} with a pendant vertex 3 attached to 2.
inline Graph paw_graph() { return Graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}); }

/// Parses "P3", "C4", "K3", "PAW", "vertex"/"K1" (case-insensitive).
inline Graph parse_pattern_name(std::string_view name)
{
    std::string s(name);
    for (auto & c : s)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (s == "PAW")
        return paw_graph();
    if (s == "VERTEX" || s == "V1")
        return single_vertex();
    if (s.size() >= 2 && (s[0] == 'P' || s[0] == 'C' || s[0] == 'K')
        && std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        const auto n = static_cast<std::size_t>(std::stoul(s.substr(1)));
        const auto kind = s[0] == 'P' ? PatternKind::path : s[0] == 'C' ? PatternKind::cycle : PatternKind::clique;
        return make_named_pattern(kind, n);
    }
    throw ParseError("unknown pattern name '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Composition

/// Gluing product: b's vertices are shifted by a.order().
inline Graph disjoint_union(const Graph & a, const Graph & b)
{
    auto e = a.edges();
    const auto shift = static_cast<Vertex>(a.order());
    for (auto [u, v] : b.edges())
        e.emplace_back(u + shift, v + shift);
    return Graph(a.order() + b.order(), e);
}

/// Joins `pattern` onto `base` by identifying pattern.root with `at`.
/// The result keeps base's root; pattern's non-root vertices are appended in order.
inline RootedGraph join_at(const RootedGraph & base, Vertex at, const RootedGraph & pattern)
{
    if (at >= base.graph.order())
        throw InvalidArgument("join vertex out of range");
    const auto n0 = static_cast<Vertex>(base.graph.order());
    std::vector<Vertex> map(pattern.graph.order());
    Vertex next = n0;
    for (Vertex v = 0; v < pattern.graph.order(); ++v)
        map[v] = v == pattern.root ? at : next++;
    auto e = base.graph.edges();
    for (auto [u, v] : pattern.graph.edges())
        e.emplace_back(map[u], map[v]);
    return RootedGraph(Graph(next, e), base.root);
}

/// Join graph (a * b): disjoint union with b's root merged into a's root.
inline RootedGraph join_rooted(const RootedGraph & a, const RootedGraph & b)
{
    return join_at(a, a.root, b);
}

/// Breadth-first distances from `source`; unreachable vertices get SIZE_MAX.
inline std::vector<std::size_t> bfs_distances(const Graph & g, Vertex source)
{
    std::vector<std::size_t> dist(g.order(), std::numeric_limits<std::size_t>::max());
    std::queue<Vertex> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        const Vertex u = q.front();
        q.pop();
        for (Vertex w : g.neighbors(u))
            if (dist[w] == std::numeric_limits<std::size_t>::max()) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    return dist;
}

/// Subgraph induced by `keep` (vertex i of the result is keep[i]).
inline Graph induced_subgraph(const Graph & g, std::span<const Vertex> keep)
{
    std::vector<Vertex> index(g.order(), std::numeric_limits<Vertex>::max());
    for (Vertex i = 0; i < keep.size(); ++i)
        index[keep[i]] = i;
    std::vector<Edge> e;
    for (Vertex i = 0; i < keep.size(); ++i)
        for (Vertex w : g.neighbors(keep[i]))
            if (index[w] != std::numeric_limits<Vertex>::max() && i < index[w])
                e.emplace_back(i, index[w]);
    return Graph(keep.size(), e);
}

/// L-hop ego-graph of v: induced on vertices within distance L, rooted at v.
inline RootedGraph ego_graph(const Graph & g, Vertex v, std::size_t radius)
{
    if (v >= g.order())
        throw InvalidArgument("ego-graph centre out of range");
    const auto dist = bfs_distances(g, v);
    std::vector<Vertex> keep;
    for (Vertex u = 0; u < g.order(); ++u)
        if (dist[u] <= radius)
            keep.push_back(u);
    const auto root = static_cast<Vertex>(std::find(keep.begin(), keep.end(), v) - keep.begin());
    return RootedGraph(induced_subgraph(g, keep), root);
}

inline std::size_t connected_components(const Graph & g)
{
    std::vector<bool> seen(g.order(), false);
    std::size_t count = 0;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (seen[s])
            continue;
        ++count;
        std::vector<Vertex> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(u))
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
    }
    return count;
}

inline bool is_connected(const Graph & g) { return g.order() > 0 && connected_components(g) == 1; }

/// Relabels vertex v as perm[v].
inline Graph permuted(const Graph & g, std::span<const Vertex> perm)
{
    std::vector<Edge> e;
    for (auto [u, v] : g.edges())
        e.emplace_back(perm[u], perm[v]);
    return Graph(g.order(), e);
}

// ---------------------------------------------------------------------------
// Edge-list text format: first line vertex count, then "u v" per line, '#' comments.

inline Graph parse_edge_list(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<std::size_t> n;
    std::vector<Edge> edges;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream ls(line);
        auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
        if (!n) {
            long long count = -1;
            std::string rest;
            if (!(ls >> count) || count < 0 || (ls >> rest))
                throw ParseError("expected vertex count" + where());
            n = static_cast<std::size_t>(count);
            continue;
        }
        long long u = -1, v = -1;
        std::string rest;
        if (!(ls >> u >> v) || (ls >> rest))
            throw ParseError("expected 'u v'" + where());
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= *n || static_cast<std::size_t>(v) >= *n)
            throw ParseError("endpoint out of range" + where());
        if (u == v)
            throw ParseError("self-loop" + where());
        edges.emplace_back(static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v)));
    }
    if (!n)
        throw ParseError("missing vertex count");
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end())
        throw ParseError("duplicate edge " + std::to_string(it->first) + " " + std::to_string(it->second));
    return Graph(*n, edges);
}

inline std::string to_edge_list(const Graph & g)
{
    std::string out = std::to_string(g.order()) + "\n";
    for (auto [u, v] : g.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

inline std::string read_text_file(const std::string & path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw ParseError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline Graph read_edge_list_file(const std::string & path) { return parse_edge_list(read_text_file(path)); }

} // namespace homscope
