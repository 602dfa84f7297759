#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homscope/error.hpp"
#include "homscope/graph.hpp"

namespace homscope {

struct CanonicalOptions {
    std::size_t max_vertices = 64;
    std::size_t max_leaves = 1'000'000;
};

namespace detail {

using Coloring = std::vector<std::uint32_t>;

inline std::size_t color_count(const Coloring & c)
{
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

/// Replaces colours by their rank among the distinct values (order preserving).
inline void compress(Coloring & c)
{
    auto vals = c;
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    for (auto & x : c)
        x = static_cast<std::uint32_t>(std::lower_bound(vals.begin(), vals.end(), x) - vals.begin());
}

/// Colour refinement to the coarsest equitable partition finer than `c`.
/// New colours are ranks of (old colour, sorted neighbour colours), so the
/// relative order of existing cells is kept and the result is isomorphism-equivariant.
inline void refine_equitable(const Graph & g, Coloring & c)
{
    const std::size_t n = g.order();
    std::size_t classes = color_count(c);
    while (true) {
        std::vector<std::vector<std::uint32_t>> sig(n);
        for (Vertex v = 0; v < n; ++v) {
            auto & s = sig[v];
            s.reserve(g.degree(v) + 1);
            s.push_back(c[v]);
            for (Vertex w : g.neighbors(v))
                s.push_back(c[w]);
            std::sort(s.begin() + 1, s.end());
        }
        auto distinct = sig;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (Vertex v = 0; v < n; ++v)
            c[v] = static_cast<std::uint32_t>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
        if (distinct.size() == classes)
            return;
        classes = distinct.size();
    }
}

inline bool are_twins(const Graph & g, Vertex u, Vertex w)
{
    if (g.degree(u) != g.degree(w))
        return false;
    auto nu = g.neighbors(u), nw = g.neighbors(w);
    std::vector<Vertex> a, b;
    for (Vertex x : nu)
        if (x != w)
            a.push_back(x);
    for (Vertex x : nw)
        if (x != u)
            b.push_back(x);
    return a == b;
}

class CanonicalSearch {
public:
    CanonicalSearch(const Graph & g, const CanonicalOptions & opt) : g_(g), opt_(opt) {}

    void run(Coloring c)
    {
        refine_equitable(g_, c);
        visit(c);
    }

    const std::string & best() const { return best_; }
    const Coloring & best_labeling() const { return best_labeling_; }

private:
    void visit(const Coloring & c)
    {
        const std::size_t n = g_.order();
        const std::size_t k = color_count(c);
        if (k == n) {
            leaf(c);
            return;
        }
        std::vector<std::size_t> size(k, 0);
        for (auto x : c)
            ++size[x];
        std::uint32_t target = 0;
        while (size[target] < 2)
            ++target;
        std::vector<Vertex> tried;
        for (Vertex v = 0; v < n; ++v) {
            if (c[v] != target)
                continue;
            if (std::any_of(tried.begin(), tried.end(), [&](Vertex t) { return are_twins(g_, t, v); }))
                continue;
            tried.push_back(v);
            Coloring next(n);
            for (Vertex u = 0; u < n; ++u)
                next[u] = 2 * c[u] + ((c[u] == target && u != v) ? 1 : 0);
            compress(next);
            refine_equitable(g_, next);
            visit(next);
        }
    }

    void leaf(const Coloring & c)
    {
        if (++leaves_ > opt_.max_leaves)
            throw ResourceError("canonical form search exceeded leaf budget");
        const std::size_t n = g_.order();
        std::vector<Vertex> at(n);
        for (Vertex v = 0; v < n; ++v)
            at[c[v]] = v;
        std::string bits((n * (n - 1) / 2 + 7) / 8, '\0');
        std::size_t pos = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j, ++pos)
                if (g_.has_edge(at[i], at[j]))
                    bits[pos / 8] = static_cast<char>(bits[pos / 8] | (0x80 >> (pos % 8)));
        if (best_labeling_.empty() || bits > best_) {
            best_ = std::move(bits);
            best_labeling_ = c;
        }
    }

    const Graph & g_;
    const CanonicalOptions & opt_;
    std::string best_;
    Coloring best_labeling_;
    std::size_t leaves_ = 0;
};

inline CanonicalSearch run_canonical(const Graph & g, std::optional<Vertex> root, const CanonicalOptions & opt)
{
    if (g.order() > opt.max_vertices)
        throw ResourceError("graph with " + std::to_string(g.order()) + " vertices exceeds canonical-form cap "
                            + std::to_string(opt.max_vertices));
    CanonicalSearch search(g, opt);
    Coloring c(g.order(), root ? 1u : 0u);
    if (root)
        c[*root] = 0;
    if (g.order() > 0)
        search.run(std::move(c));
    return search;
}

inline std::string label_header(std::size_t n, std::size_t m, bool rooted)
{
    return std::to_string(n) + ":" + std::to_string(m) + (rooted ? ":r:" : ":u:");
}

} // namespace detail

/// Byte-string label; equal iff the graphs are isomorphic.
inline std::string canonical_form(const Graph & g, const CanonicalOptions & opt = {})
{
    auto s = detail::run_canonical(g, std::nullopt, opt);
    return detail::label_header(g.order(), g.size(), false) + s.best();
}

/// Label for rooted isomorphism (isomorphisms must map root to root).
inline std::string canonical_form(const RootedGraph & g, const CanonicalOptions & opt = {})
{
    auto s = detail::run_canonical(g.graph, g.root, opt);
    return detail::label_header(g.graph.order(), g.graph.size(), true) + s.best();
}

/// The canonical representative: relabelled so equal labels give equal graphs.
inline Graph canonical_graph(const Graph & g, const CanonicalOptions & opt = {})
{
    if (g.order() == 0)
        return g;
    auto s = detail::run_canonical(g, std::nullopt, opt);
    return permuted(g, s.best_labeling());
}

/// Canonical representative of a rooted graph; the root becomes vertex 0.
inline RootedGraph canonical_graph(const RootedGraph & g, const CanonicalOptions & opt = {})
{
    auto s = detail::run_canonical(g.graph, g.root, opt);
    return RootedGraph(permuted(g.graph, s.best_labeling()), s.best_labeling()[g.root]);
}

inline bool are_isomorphic(const Graph & a, const Graph & b)
{
    if (a.order() != b.order() || a.size() != b.size())
        return false;
    return canonical_form(a) == canonical_form(b);
}

inline bool are_isomorphic(const RootedGraph & a, const RootedGraph & b)
{
    if (a.graph.order() != b.graph.order() || a.graph.size() != b.graph.size())
        return false;
    return canonical_form(a) == canonical_form(b);
}

} // namespace homscope
