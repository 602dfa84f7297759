#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "homscope/dataset.hpp"
#include "homscope/graph.hpp"
#include "homscope/hom.hpp"
#include "homscope/parallel.hpp"
#include "homscope/pattern_set.hpp"

namespace homscope {

using ColorId = std::uint32_t;
using Coloring = std::vector<ColorId>;

/// Injective map from colour signatures to ids. Ids are handed out in
/// lexicographic signature order by `freeze`, so they do not depend on the
/// order in which graphs were visited.
class ColorDictionary {
public:
    void add(const std::string & signature) { ids_.try_emplace(signature, 0); }

    void freeze()
    {
        ColorId next = 0;
        for (auto & [sig, id] : ids_)
            id = next++;
    }

    ColorId id(const std::string & signature) const
    {
        auto it = ids_.find(signature);
        if (it == ids_.end())
            throw InternalError("colour signature not interned");
        return it->second;
    }

    std::size_t size() const noexcept { return ids_.size(); }

private:
    std::map<std::string, ColorId> ids_;
};

namespace detail {

inline void append_u32(std::string & s, std::uint32_t x)
{
    for (int shift = 24; shift >= 0; shift -= 8)
        s.push_back(static_cast<char>((x >> shift) & 0xff));
}

/// Rooted hom counts of every pattern at v, as a signature string.
inline std::string initial_signature(const Graph & g, Vertex v, const std::vector<RootedGraph> & rooted,
                                     const CountOptions & opt)
{
    std::string s;
    for (const auto & p : rooted) {
        s += count_hom_rooted_at(p, g, v, opt).str();
        s.push_back(';');
    }
    return s;
}

/// (own colour, sorted neighbour colours) as a big-endian byte string, so
/// byte order equals numeric order.
inline std::string refine_signature(const Graph & g, Vertex v, const Coloring & c)
{
    std::vector<ColorId> nb;
    nb.reserve(g.degree(v));
    for (Vertex w : g.neighbors(v))
        nb.push_back(c[w]);
    std::sort(nb.begin(), nb.end());
    std::string s;
    s.reserve(4 * (nb.size() + 1));
    append_u32(s, c[v]);
    for (auto x : nb)
        append_u32(s, x);
    return s;
}

inline std::vector<RootedGraph> rooted_patterns(const PatternSet & patterns)
{
    std::vector<RootedGraph> out;
    for (const auto & p : patterns)
        out.push_back(p.rooted());
    return out;
}

} // namespace detail

/// Iteration-0 colours of a single graph: nodes with equal rooted hom-count
/// vectors (hom(F_i^r, G^v))_i share a colour.
inline Coloring initial_colors(const Graph & g, const PatternSet & patterns, const CountOptions & opt = {})
{
    const auto rooted = detail::rooted_patterns(patterns);
    std::vector<std::string> sig(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
        sig[v] = detail::initial_signature(g, v, rooted, opt);
    ColorDictionary dict;
    for (const auto & s : sig)
        dict.add(s);
    dict.freeze();
    Coloring c(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
        c[v] = dict.id(sig[v]);
    return c;
}

/// One refinement round on a single graph.
inline Coloring refine(const Graph & g, const Coloring & colors)
{
    if (colors.size() != g.order())
        throw InvalidArgument("colouring does not cover every node");
    std::vector<std::string> sig(g.order());
    ColorDictionary dict;
    for (Vertex v = 0; v < g.order(); ++v) {
        sig[v] = detail::refine_signature(g, v, colors);
        dict.add(sig[v]);
    }
    dict.freeze();
    Coloring out(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
        out[v] = dict.id(sig[v]);
    return out;
}

/// Per-iteration colour counts of one graph.
struct ColorHistogram {
    std::vector<std::map<ColorId, std::uint64_t>> blocks;

    friend bool operator==(const ColorHistogram &, const ColorHistogram &) = default;
};

/// Sparse feature row: sorted coordinate indices with their values.
struct SparseRow {
    std::vector<std::uint32_t> idx;
    std::vector<double> val;

    friend bool operator==(const SparseRow &, const SparseRow &) = default;
    friend auto operator<=>(const SparseRow &, const SparseRow &) = default;
};

/// F-WL refinement of a batch of graphs with dictionaries shared per iteration.
class FwlRun {
public:
    FwlRun(std::span<const Graph> graphs, const PatternSet & patterns, std::size_t depth, const CountOptions & opt = {})
        : graphs_(graphs.begin(), graphs.end())
    {
        const auto rooted = detail::rooted_patterns(patterns);
        colors_.assign(graphs_.size(), {});

        std::vector<std::vector<std::string>> sig(graphs_.size());
        parallel_for(graphs_.size(), [&](std::size_t gi) {
            const auto & g = graphs_[gi];
            sig[gi].resize(g.order());
            for (Vertex v = 0; v < g.order(); ++v)
                sig[gi][v] = detail::initial_signature(g, v, rooted, opt);
        });
        intern(sig);

        for (std::size_t it = 1; it <= depth; ++it) {
            parallel_for(graphs_.size(), [&](std::size_t gi) {
                const auto & g = graphs_[gi];
                const auto & prev = colors_[gi].back();
                for (Vertex v = 0; v < g.order(); ++v)
                    sig[gi][v] = detail::refine_signature(g, v, prev);
            });
            intern(sig);
        }
    }

    std::size_t depth() const noexcept { return palette_.size() - 1; }
    std::size_t graph_count() const noexcept { return graphs_.size(); }

    /// Distinct colours at each iteration across the batch.
    const std::vector<std::size_t> & palette() const noexcept { return palette_; }

    std::size_t dimension() const
    {
        std::size_t d = 0;
        for (auto p : palette_)
            d += p;
        return d;
    }

    const Coloring & colors(std::size_t graph, std::size_t iteration) const { return colors_[graph][iteration]; }

    ColorHistogram histogram(std::size_t graph) const
    {
        ColorHistogram h;
        for (const auto & c : colors_[graph]) {
            auto & block = h.blocks.emplace_back();
            for (auto x : c)
                ++block[x];
        }
        return h;
    }

    /// Stacked colour counts of every iteration.
    SparseRow graph_features(std::size_t graph) const
    {
        std::map<std::uint32_t, double> acc;
        std::uint32_t offset = 0;
        for (std::size_t it = 0; it < palette_.size(); ++it) {
            for (auto x : colors_[graph][it])
                acc[offset + x] += 1.0;
            offset += static_cast<std::uint32_t>(palette_[it]);
        }
        return to_row(acc);
    }

    /// Stacked per-iteration counts of the colours of v's neighbours.
    SparseRow node_features(std::size_t graph, Vertex v) const
    {
        const auto & g = graphs_[graph];
        std::map<std::uint32_t, double> acc;
        std::uint32_t offset = 0;
        for (std::size_t it = 0; it < palette_.size(); ++it) {
            for (Vertex w : g.neighbors(v))
                acc[offset + colors_[graph][it][w]] += 1.0;
            offset += static_cast<std::uint32_t>(palette_[it]);
        }
        return to_row(acc);
    }

private:
    static SparseRow to_row(const std::map<std::uint32_t, double> & acc)
    {
        SparseRow r;
        for (auto [i, v] : acc) {
            r.idx.push_back(i);
            r.val.push_back(v);
        }
        return r;
    }

    void intern(const std::vector<std::vector<std::string>> & sig)
    {
        ColorDictionary dict;
        for (const auto & per_graph : sig)
            for (const auto & s : per_graph)
                dict.add(s);
        dict.freeze();
        for (std::size_t gi = 0; gi < sig.size(); ++gi) {
            Coloring c(sig[gi].size());
            for (std::size_t v = 0; v < c.size(); ++v)
                c[v] = dict.id(sig[gi][v]);
            colors_[gi].push_back(std::move(c));
        }
        palette_.push_back(dict.size());
    }

    std::vector<Graph> graphs_;
    std::vector<std::vector<Coloring>> colors_;
    std::vector<std::size_t> palette_;
};

/// Histograms of iterations 0..depth for a single graph.
inline ColorHistogram fwl_histograms(const Graph & g, const PatternSet & patterns, std::size_t depth,
                                     const CountOptions & opt = {})
{
    return FwlRun(std::span<const Graph>(&g, 1), patterns, depth, opt).histogram(0);
}

/// Per-node representations of a single graph (neighbour colour histograms, stacked).
inline std::vector<SparseRow> node_representations(const Graph & g, const PatternSet & patterns, std::size_t depth,
                                                   const CountOptions & opt = {})
{
    FwlRun run(std::span<const Graph>(&g, 1), patterns, depth, opt);
    std::vector<SparseRow> out;
    for (Vertex v = 0; v < g.order(); ++v)
        out.push_back(run.node_features(0, v));
    return out;
}

// ---------------------------------------------------------------------------
// Dataset featurization

/// One row per item (graph, or node in concatenation order), sharing coordinates.
struct FeatureMatrix {
    std::size_t dim = 0;
    std::vector<SparseRow> rows;
    std::vector<std::size_t> labels;

    /// Dense copies of the selected rows, keeping only coordinates that are
    /// non-zero in at least one of them (Euclidean geometry is unchanged).
    std::vector<std::vector<double>> dense(std::span<const std::size_t> items) const
    {
        std::vector<std::uint32_t> cols;
        for (auto i : items)
            cols.insert(cols.end(), rows[i].idx.begin(), rows[i].idx.end());
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        std::vector<std::vector<double>> out;
        out.reserve(items.size());
        for (auto i : items) {
            std::vector<double> d(cols.size(), 0.0);
            const auto & r = rows[i];
            for (std::size_t k = 0; k < r.idx.size(); ++k)
                d[static_cast<std::size_t>(std::lower_bound(cols.begin(), cols.end(), r.idx[k]) - cols.begin())] = r.val[k];
            out.push_back(std::move(d));
        }
        return out;
    }
};

struct FeaturizeOptions {
    std::size_t depth = 1;
    Task level = Task::graph;
    /// Node level only: refine each node's depth-hop ego-graph separately
    /// instead of the whole graph.
    bool ego = false;
    CountOptions counting{};
};

inline FeatureMatrix dataset_featurize(const GraphDataset & ds, const PatternSet & patterns, const FeaturizeOptions & opt)
{
    FeatureMatrix fm;
    if (opt.level == Task::graph) {
        FwlRun run(ds.graphs, patterns, opt.depth, opt.counting);
        fm.dim = run.dimension();
        for (std::size_t gi = 0; gi < ds.graphs.size(); ++gi) {
            fm.rows.push_back(run.graph_features(gi));
            fm.labels.push_back(ds.task == Task::graph ? ds.graph_labels.at(gi) : 0);
        }
        return fm;
    }
    auto node_label = [&](std::size_t gi, Vertex v) -> std::size_t {
        if (ds.task == Task::node)
            return ds.node_labels.at(gi).at(v);
        return ds.graph_labels.empty() ? 0 : ds.graph_labels.at(gi);
    };
    if (!opt.ego) {
        FwlRun run(ds.graphs, patterns, opt.depth, opt.counting);
        fm.dim = run.dimension();
        for (std::size_t gi = 0; gi < ds.graphs.size(); ++gi)
            for (Vertex v = 0; v < ds.graphs[gi].order(); ++v) {
                fm.rows.push_back(run.node_features(gi, v));
                fm.labels.push_back(node_label(gi, v));
            }
        return fm;
    }
    std::vector<Graph> egos;
    std::vector<Vertex> roots;
    for (std::size_t gi = 0; gi < ds.graphs.size(); ++gi)
        for (Vertex v = 0; v < ds.graphs[gi].order(); ++v) {
            auto e = ego_graph(ds.graphs[gi], v, opt.depth);
            egos.push_back(std::move(e.graph));
            roots.push_back(e.root);
            fm.labels.push_back(node_label(gi, v));
        }
    FwlRun run(egos, patterns, opt.depth, opt.counting);
    fm.dim = run.dimension();
    for (std::size_t i = 0; i < egos.size(); ++i)
        fm.rows.push_back(run.node_features(i, roots[i]));
    return fm;
}

} // namespace homscope
