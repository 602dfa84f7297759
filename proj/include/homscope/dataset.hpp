#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "homscope/error.hpp"
#include "homscope/graph.hpp"

namespace homscope {

enum class Task { graph, node };

inline std::string to_string(Task t) { return t == Task::graph ? "graph" : "node"; }

/// Labelled graphs for graph classification, or graphs with per-node labels
/// for node classification. Split indices address graphs (graph task) or
/// nodes in concatenation order over all graphs (node task).
struct GraphDataset {
    Task task = Task::graph;
    std::vector<Graph> graphs;
    std::vector<std::size_t> graph_labels;
    std::vector<std::vector<std::size_t>> node_labels;
    std::size_t num_classes = 1;
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;

    std::size_t item_count() const
    {
        if (task == Task::graph)
            return graphs.size();
        std::size_t n = 0;
        for (const auto & g : graphs)
            n += g.order();
        return n;
    }

    /// (graph index, vertex) of a flattened node index.
    std::pair<std::size_t, Vertex> locate_node(std::size_t item) const
    {
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            if (item < graphs[gi].order())
                return {gi, static_cast<Vertex>(item)};
            item -= graphs[gi].order();
        }
        throw InvalidArgument("node index out of range");
    }

    std::size_t label_of(std::size_t item) const
    {
        if (task == Task::graph)
            return graph_labels.at(item);
        auto [gi, v] = locate_node(item);
        return node_labels.at(gi).at(v);
    }

    void validate() const
    {
        if (num_classes < 1)
            throw InvariantError("dataset needs at least one class");
        if (task == Task::graph) {
            if (graph_labels.size() != graphs.size())
                throw InvariantError("graph label count does not match graph count");
            for (auto l : graph_labels)
                if (l >= num_classes)
                    throw InvariantError("graph label " + std::to_string(l) + " >= class count");
        }
        else {
            if (node_labels.size() != graphs.size())
                throw InvariantError("node labels missing for some graphs");
            for (std::size_t i = 0; i < graphs.size(); ++i) {
                if (node_labels[i].size() != graphs[i].order())
                    throw InvariantError("graph " + std::to_string(i) + " has the wrong number of node labels");
                for (auto l : node_labels[i])
                    if (l >= num_classes)
                        throw InvariantError("node label " + std::to_string(l) + " >= class count");
            }
        }
        const auto items = item_count();
        std::vector<char> used(items, 0);
        for (const auto * part : {&train, &test})
            for (auto i : *part) {
                if (i >= items)
                    throw InvariantError("split index " + std::to_string(i) + " out of range");
                if (used[i]++)
                    throw InvariantError("split index " + std::to_string(i) + " appears twice");
            }
    }
};

/// Puts every item in the training split.
inline void use_all_for_training(GraphDataset & ds)
{
    ds.train.resize(ds.item_count());
    std::iota(ds.train.begin(), ds.train.end(), std::size_t{0});
    ds.test.clear();
}

/// Seeded random train/test split; both index lists come out sorted.
inline void random_split(GraphDataset & ds, double train_fraction, std::uint64_t seed)
{
    if (!(train_fraction > 0.0 && train_fraction <= 1.0))
        throw InvalidArgument("train fraction must be in (0, 1]");
    std::vector<std::size_t> idx(ds.item_count());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto cut = static_cast<std::size_t>(train_fraction * static_cast<double>(idx.size()) + 0.5);
    ds.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(cut));
    ds.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(cut), idx.end());
    std::sort(ds.train.begin(), ds.train.end());
    std::sort(ds.test.begin(), ds.test.end());
}

/// Maps raw labels to 0..K-1 in order of first appearance.
inline std::vector<std::size_t> remap_labels(const std::vector<long long> & raw, std::size_t & classes)
{
    std::map<long long, std::size_t> ids;
    std::vector<std::size_t> out;
    out.reserve(raw.size());
    for (auto r : raw) {
        auto [it, fresh] = ids.try_emplace(r, ids.size());
        out.push_back(it->second);
    }
    classes = ids.size();
    return out;
}

// ---------------------------------------------------------------------------
// TU dataset directory format

class TuParseError : public ParseError {
public:
    enum class Kind { missing_file, malformed_line, non_contiguous_indicator, cross_graph_edge, label_count };

    TuParseError(Kind k, const std::string & what) : ParseError(what), kind_(k) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

namespace detail {

inline std::vector<std::vector<long long>> read_tu_table(const std::filesystem::path & path, std::size_t fields)
{
    std::ifstream f(path);
    if (!f)
        throw TuParseError(TuParseError::Kind::missing_file, "missing TU file '" + path.string() + "'");
    std::vector<std::vector<long long>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        std::vector<long long> row;
        long long x;
        while (ls >> x)
            row.push_back(x);
        std::string junk;
        ls.clear();
        if ((ls >> junk) || row.size() != fields)
            throw TuParseError(TuParseError::Kind::malformed_line,
                               path.filename().string() + ":" + std::to_string(lineno) + ": malformed line");
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace detail

/// Reads DS_A.txt, DS_graph_indicator.txt and, depending on the task,
/// DS_graph_labels.txt or DS_node_labels.txt. Global 1-indexed node ids are
/// remapped to per-graph 0-indexed ids; (i,j)/(j,i) pairs become one edge and
/// self-loops are dropped. Every item starts in the training split.
inline GraphDataset parse_tu_dataset(const std::filesystem::path & dir, const std::string & name, Task task = Task::graph)
{
    using K = TuParseError::Kind;
    const auto file = [&](const char * suffix) { return dir / (name + "_" + suffix + ".txt"); };

    const auto indicator_rows = detail::read_tu_table(file("graph_indicator"), 1);
    const auto edge_rows = detail::read_tu_table(file("A"), 2);

    const std::size_t nodes = indicator_rows.size();
    std::vector<std::size_t> graph_of(nodes);
    std::vector<std::size_t> first_node;
    for (std::size_t i = 0; i < nodes; ++i) {
        const long long gid = indicator_rows[i][0];
        const auto expected_new = static_cast<long long>(first_node.size()) + 1;
        if (gid == expected_new)
            first_node.push_back(i);
        else if (gid != expected_new - 1)
            throw TuParseError(K::non_contiguous_indicator, "graph indicator line " + std::to_string(i + 1)
                                                                + " has id " + std::to_string(gid)
                                                                + "; ids must be contiguous 1..G in node order");
        graph_of[i] = static_cast<std::size_t>(gid - 1);
    }
    const std::size_t graph_count = first_node.size();

    std::vector<std::vector<Edge>> edges(graph_count);
    for (std::size_t r = 0; r < edge_rows.size(); ++r) {
        const long long a = edge_rows[r][0], b = edge_rows[r][1];
        if (a < 1 || b < 1 || static_cast<std::size_t>(a) > nodes || static_cast<std::size_t>(b) > nodes)
            throw TuParseError(K::malformed_line, "edge line " + std::to_string(r + 1) + " references an unknown node");
        const auto u = static_cast<std::size_t>(a - 1), v = static_cast<std::size_t>(b - 1);
        if (graph_of[u] != graph_of[v])
            throw TuParseError(K::cross_graph_edge, "edge " + std::to_string(a) + ", " + std::to_string(b)
                                                        + " joins nodes of different graphs");
        if (u == v)
            continue;
        const auto base = first_node[graph_of[u]];
        const auto lu = static_cast<Vertex>(u - base), lv = static_cast<Vertex>(v - base);
        edges[graph_of[u]].emplace_back(std::min(lu, lv), std::max(lu, lv));
    }

    GraphDataset ds;
    ds.task = task;
    for (std::size_t gi = 0; gi < graph_count; ++gi) {
        auto & e = edges[gi];
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        const std::size_t end = gi + 1 < graph_count ? first_node[gi + 1] : nodes;
        ds.graphs.emplace_back(end - first_node[gi], e);
    }

    if (task == Task::graph) {
        const auto rows = detail::read_tu_table(file("graph_labels"), 1);
        if (rows.size() != graph_count)
            throw TuParseError(K::label_count, "graph label count " + std::to_string(rows.size())
                                                   + " differs from graph count " + std::to_string(graph_count));
        std::vector<long long> raw;
        for (const auto & r : rows)
            raw.push_back(r[0]);
        ds.graph_labels = remap_labels(raw, ds.num_classes);
    }
    else {
        const auto rows = detail::read_tu_table(file("node_labels"), 1);
        if (rows.size() != nodes)
            throw TuParseError(K::label_count, "node label count differs from node count");
        std::vector<long long> raw;
        for (const auto & r : rows)
            raw.push_back(r[0]);
        const auto flat = remap_labels(raw, ds.num_classes);
        ds.node_labels.resize(graph_count);
        for (std::size_t i = 0; i < nodes; ++i)
            ds.node_labels[graph_of[i]].push_back(flat[i]);
    }
    use_all_for_training(ds);
    ds.validate();
    return ds;
}

} // namespace homscope
