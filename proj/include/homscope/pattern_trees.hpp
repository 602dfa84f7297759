#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "homscope/canonical.hpp"
#include "homscope/graph.hpp"
#include "homscope/pattern_set.hpp"

namespace homscope {

/// `copies` copies of pattern `pattern` joined at backbone vertex `vertex`.
struct Attachment {
    Vertex vertex;
    std::size_t pattern;
    std::size_t copies;

    friend bool operator==(const Attachment &, const Attachment &) = default;
};

/// A rooted backbone tree with pattern copies joined at its vertices.
struct PatternTree {
    RootedGraph tree;
    RootedGraph backbone;
    std::vector<Attachment> attachments;
};

/// Largest root distance; the depth of a rooted tree.
inline std::size_t rooted_depth(const RootedGraph & t)
{
    std::size_t d = 0;
    for (auto x : bfs_distances(t.graph, t.root))
        if (x != std::numeric_limits<std::size_t>::max())
            d = std::max(d, x);
    return d;
}

/// All rooted trees with depth <= max_depth and at most max_nodes vertices, up
/// to rooted isomorphism. Canonical representatives, ordered by size then label.
inline std::vector<RootedGraph> enumerate_backbones(std::size_t max_depth, std::size_t max_nodes)
{
    if (max_nodes < 1)
        throw InvalidArgument("backbone budget must be at least 1");
    std::map<std::pair<std::size_t, std::string>, RootedGraph> found;
    std::vector<RootedGraph> frontier{RootedGraph(single_vertex(), 0)};
    found.emplace(std::pair{std::size_t{1}, canonical_form(frontier[0])}, frontier[0]);
    for (std::size_t size = 1; size < max_nodes; ++size) {
        std::vector<RootedGraph> next;
        for (const auto & t : frontier) {
            const auto dist = bfs_distances(t.graph, t.root);
            for (Vertex w = 0; w < t.graph.order(); ++w) {
                if (dist[w] >= max_depth)
                    continue;
                auto e = t.graph.edges();
                e.emplace_back(w, static_cast<Vertex>(t.graph.order()));
                RootedGraph grown(Graph(t.graph.order() + 1, e), t.root);
                auto label = canonical_form(grown);
                auto key = std::pair{grown.graph.order(), label};
                if (!found.count(key)) {
                    auto canon = canonical_graph(grown);
                    found.emplace(key, canon);
                    next.push_back(std::move(canon));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<RootedGraph> out;
    for (auto & [k, t] : found)
        out.push_back(std::move(t));
    return out;
}

/// Rebuilds the tree described by a backbone and attachment record.
inline RootedGraph assemble_pattern_tree(const RootedGraph & backbone, const std::vector<Attachment> & attachments,
                                         const PatternSet & patterns)
{
    RootedGraph t = backbone;
    for (const auto & a : attachments) {
        const auto p = patterns[a.pattern].rooted();
        for (std::size_t c = 0; c < a.copies; ++c)
            t = join_at(t, a.vertex, p);
    }
    return t;
}

namespace detail {

struct TreeCollector {
    const PatternSet & patterns;
    std::size_t max_nodes;
    std::set<std::string> & seen;
    std::vector<PatternTree> & out;
};

inline void attach_slots(TreeCollector & col, const RootedGraph & backbone,
                         const std::vector<std::pair<Vertex, std::size_t>> & slots, std::size_t slot,
                         std::size_t room, std::vector<Attachment> & chosen)
{
    if (slot == slots.size()) {
        auto tree = assemble_pattern_tree(backbone, chosen, col.patterns);
        if (col.seen.insert(canonical_form(tree)).second)
            col.out.push_back({std::move(tree), backbone, chosen});
        return;
    }
    const auto [w, p] = slots[slot];
    const std::size_t cost = col.patterns[p].graph.order() - 1;
    attach_slots(col, backbone, slots, slot + 1, room, chosen);
    for (std::size_t copies = 1; copies * cost <= room; ++copies) {
        chosen.push_back({w, p, copies});
        attach_slots(col, backbone, slots, slot + 1, room - copies * cost, chosen);
        chosen.pop_back();
    }
}

inline void pattern_trees_on(TreeCollector & col, const RootedGraph & backbone)
{
    if (backbone.graph.order() > col.max_nodes)
        return;
    std::vector<std::pair<Vertex, std::size_t>> slots;
    for (Vertex w = 0; w < backbone.graph.order(); ++w)
        for (std::size_t p = 0; p < col.patterns.size(); ++p)
            if (col.patterns[p].graph.order() > 1)
                slots.emplace_back(w, p);
    std::vector<Attachment> chosen;
    attach_slots(col, backbone, slots, 0, col.max_nodes - backbone.graph.order(), chosen);
}

} // namespace detail

/// F-pattern trees on one fixed backbone with at most max_nodes vertices in total.
/// Single-vertex patterns are identities for joining and contribute nothing.
inline std::vector<PatternTree> enumerate_pattern_trees_on(const RootedGraph & backbone, const PatternSet & patterns,
                                                           std::size_t max_nodes)
{
    std::set<std::string> seen;
    std::vector<PatternTree> out;
    detail::TreeCollector col{patterns, max_nodes, seen, out};
    detail::pattern_trees_on(col, backbone);
    return out;
}

/// T_L(F) truncated to trees with at most max_nodes vertices, deduplicated by
/// rooted isomorphism. Each tree keeps the first (backbone, attachments)
/// record that produced it, scanning backbones by size then canonical label.
inline std::vector<PatternTree> enumerate_pattern_trees(const PatternSet & patterns, std::size_t max_depth,
                                                        std::size_t max_nodes)
{
    std::set<std::string> seen;
    std::vector<PatternTree> out;
    detail::TreeCollector col{patterns, max_nodes, seen, out};
    for (const auto & b : enumerate_backbones(max_depth, max_nodes))
        detail::pattern_trees_on(col, b);
    return out;
}

} // namespace homscope
