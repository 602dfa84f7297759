#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "homscope/error.hpp"
#include "homscope/graph.hpp"

namespace homscope {

/// Exact non-negative count.
using Count = boost::multiprecision::cpp_int;

struct CountOptions {
    /// Candidate extensions examined before giving up with ResourceError.
    std::uint64_t max_search_nodes = 1'000'000'000;
};

/// `surjective` is onto the host's vertices; `edge_surjective` is onto both
/// vertices and edges (the images in the spasm).
enum class MapKind { hom, injective, surjective, edge_surjective };

namespace detail {

/// Backtracking enumerator for vertex maps pattern -> host that preserve edges.
///
/// Pattern vertices are placed in a connectivity-first, degree-descending
/// order; each new vertex may only go to a common neighbour of the images of
/// its already-placed neighbours.
class MapCounter {
public:
    MapCounter(const Graph & pattern, const Graph & host, MapKind kind, const CountOptions & opt)
        : f_(pattern), g_(host), kind_(kind), opt_(opt)
    {
    }

    Count count(std::optional<std::pair<Vertex, Vertex>> fixed = std::nullopt)
    {
        const std::size_t k = f_.order();
        if (k == 0)
            return 1;
        if (kind_ == MapKind::injective && k > g_.order())
            return 0;
        if (onto() && k < g_.order())
            return 0;
        if (kind_ == MapKind::edge_surjective && f_.size() < g_.size())
            return 0;
        if (g_.order() == 0)
            return 0;
        build_order(fixed ? std::optional<Vertex>(fixed->first) : std::nullopt);
        // isolated pattern vertices are free for plain homomorphisms: factor n each
        std::size_t free_vertices = 0;
        if (kind_ == MapKind::hom)
            while (order_.size() > 1 && f_.degree(order_.back()) == 0
                   && !(fixed && order_.back() == fixed->first)) {
                order_.pop_back();
                ++free_vertices;
            }
        image_.assign(k, 0);
        used_.assign(g_.order(), 0);
        uncovered_ = g_.order();
        total_ = 0;
        partial_ = 0;
        if (fixed) {
            if (fixed->second >= g_.order())
                throw InvalidArgument("host root out of range");
            const Vertex h = fixed->second;
            image_[order_[0]] = h;
            take(h);
            if (order_.size() == 1)
                leaf_hit();
            else
                extend(1);
        }
        else {
            extend(0);
        }
        flush();
        Count result = total_;
        for (std::size_t i = 0; i < free_vertices; ++i)
            result *= g_.order();
        return result;
    }

private:
    bool onto() const { return kind_ == MapKind::surjective || kind_ == MapKind::edge_surjective; }

    bool covers_host_edges() const
    {
        std::vector<Edge> hit;
        for (auto [u, v] : f_.edges()) {
            auto a = image_[u], b = image_[v];
            hit.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(hit.begin(), hit.end());
        hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
        return hit.size() == g_.size();
    }

    void build_order(std::optional<Vertex> first)
    {
        const std::size_t k = f_.order();
        std::vector<bool> placed(k, false);
        std::vector<std::size_t> placed_nb(k, 0);
        order_.clear();
        back_.assign(k, {});
        for (std::size_t step = 0; step < k; ++step) {
            Vertex pick = 0;
            bool have = false;
            if (step == 0 && first) {
                pick = *first;
                have = true;
            }
            else {
                for (Vertex v = 0; v < k; ++v) {
                    if (placed[v])
                        continue;
                    if (!have || placed_nb[v] > placed_nb[pick]
                        || (placed_nb[v] == placed_nb[pick] && f_.degree(v) > f_.degree(pick))) {
                        pick = v;
                        have = true;
                    }
                }
            }
            placed[pick] = true;
            order_.push_back(pick);
            for (Vertex w : f_.neighbors(pick)) {
                ++placed_nb[w];
                if (placed[w] && w != pick)
                    back_[step].push_back(w);
            }
        }
    }

    void take(Vertex h)
    {
        if (used_[h]++ == 0)
            --uncovered_;
    }

    void release(Vertex h)
    {
        if (--used_[h] == 0)
            ++uncovered_;
    }

    void tick()
    {
        if (++nodes_ > opt_.max_search_nodes)
            throw ResourceError("homomorphism search exceeded the budget of "
                                + std::to_string(opt_.max_search_nodes) + " search nodes");
    }

    void add(std::uint64_t x)
    {
        if (partial_ > std::numeric_limits<std::uint64_t>::max() - x)
            flush();
        partial_ += x;
    }

    void flush()
    {
        total_ += partial_;
        partial_ = 0;
    }

    void leaf_hit()
    {
        if (!onto() || (uncovered_ == 0 && (kind_ != MapKind::edge_surjective || covers_host_edges())))
            add(1);
    }

    bool admissible(std::size_t step, Vertex h) const
    {
        if (kind_ == MapKind::injective && used_[h])
            return false;
        for (Vertex b : back_[step])
            if (!g_.has_edge(image_[b], h))
                return false;
        return true;
    }

    template <typename Fn>
    void for_each_candidate(std::size_t step, Fn && fn)
    {
        const auto & back = back_[step];
        if (back.empty()) {
            for (Vertex h = 0; h < g_.order(); ++h) {
                tick();
                if (admissible(step, h))
                    fn(h);
            }
            return;
        }
        Vertex anchor = image_[back[0]];
        for (Vertex b : back)
            if (g_.degree(image_[b]) < g_.degree(anchor))
                anchor = image_[b];
        for (Vertex h : g_.neighbors(anchor)) {
            tick();
            if (admissible(step, h))
                fn(h);
        }
    }

    void extend(std::size_t step)
    {
        const std::size_t k = order_.size();
        const Vertex pv = order_[step];
        const bool last = step + 1 == k;
        if (last && !onto()) {
            std::uint64_t c = 0;
            for_each_candidate(step, [&](Vertex) { ++c; });
            add(c);
            return;
        }
        if (onto() && k - step < uncovered_)
            return;
        for_each_candidate(step, [&](Vertex h) {
            image_[pv] = h;
            take(h);
            if (last)
                leaf_hit();
            else
                extend(step + 1);
            release(h);
        });
    }

    const Graph & f_;
    const Graph & g_;
    MapKind kind_;
    const CountOptions & opt_;
    std::vector<Vertex> order_;
    std::vector<std::vector<Vertex>> back_;
    std::vector<Vertex> image_;
    std::vector<std::uint32_t> used_;
    std::size_t uncovered_ = 0;
    std::uint64_t nodes_ = 0;
    std::uint64_t partial_ = 0;
    Count total_ = 0;
};

} // namespace detail

/// hom(F, G): number of edge-preserving maps V_F -> V_G.
inline Count count_hom(const Graph & f, const Graph & g, const CountOptions & opt = {})
{
    if (f.order() == 0)
        throw InvalidArgument("pattern must have at least one vertex");
    return detail::MapCounter(f, g, MapKind::hom, opt).count();
}

/// Homomorphisms sending f.root to g.root.
inline Count count_hom_rooted(const RootedGraph & f, const RootedGraph & g, const CountOptions & opt = {})
{
    return detail::MapCounter(f.graph, g.graph, MapKind::hom, opt).count(std::pair{f.root, g.root});
}

/// Homomorphisms sending f.root to host vertex v.
inline Count count_hom_rooted_at(const RootedGraph & f, const Graph & g, Vertex v, const CountOptions & opt = {})
{
    return detail::MapCounter(f.graph, g, MapKind::hom, opt).count(std::pair{f.root, v});
}

/// Vertex-injective homomorphisms.
inline Count count_inj(const Graph & f, const Graph & g, const CountOptions & opt = {})
{
    if (f.order() == 0)
        throw InvalidArgument("pattern must have at least one vertex");
    return detail::MapCounter(f, g, MapKind::injective, opt).count();
}

/// Vertex-surjective homomorphisms; 0 when f has fewer vertices than g.
inline Count count_surj(const Graph & f, const Graph & g, const CountOptions & opt = {})
{
    if (f.order() == 0)
        throw InvalidArgument("pattern must have at least one vertex");
    return detail::MapCounter(f, g, MapKind::surjective, opt).count();
}

/// Homomorphisms onto every vertex and every edge of g.
inline Count count_edge_surj(const Graph & f, const Graph & g, const CountOptions & opt = {})
{
    if (f.order() == 0)
        throw InvalidArgument("pattern must have at least one vertex");
    return detail::MapCounter(f, g, MapKind::edge_surjective, opt).count();
}

/// |Aut(F)| = inj(F, F).
inline Count count_aut(const Graph & f, const CountOptions & opt = {}) { return count_inj(f, f, opt); }

/// Number of (not necessarily induced) copies of f in g: inj(f,g) / aut(f).
inline Count count_sub(const Graph & f, const Graph & g, const CountOptions & opt = {})
{
    const Count inj = count_inj(f, g, opt);
    const Count aut = count_aut(f, opt);
    if (inj % aut != 0)
        throw InternalError("inj(F,G) is not divisible by aut(F)");
    return inj / aut;
}

inline Count count_maps(MapKind kind, const Graph & f, const Graph & g, const CountOptions & opt = {})
{
    switch (kind) {
    case MapKind::injective:
        return count_inj(f, g, opt);
    case MapKind::surjective:
        return count_surj(f, g, opt);
    case MapKind::edge_surjective:
        return count_edge_surj(f, g, opt);
    case MapKind::hom:
        break;
    }
    return count_hom(f, g, opt);
}

} // namespace homscope
