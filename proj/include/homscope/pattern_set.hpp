#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "homscope/canonical.hpp"
#include "homscope/error.hpp"
#include "homscope/graph.hpp"

namespace homscope {

struct Pattern {
    Graph graph;
    std::optional<Vertex> root;
    std::string name;

    /// Rooted view. Unrooted patterns are rooted at vertex 0.
    RootedGraph rooted() const { return RootedGraph(graph, root.value_or(0)); }
};

/// Ordered, non-empty list of pairwise non-isomorphic patterns.
class PatternSet {
public:
    explicit PatternSet(std::vector<Pattern> patterns, std::string name = {})
        : patterns_(std::move(patterns)), name_(std::move(name))
    {
        if (patterns_.empty())
            throw InvariantError("pattern set must not be empty");
        std::set<std::string> seen;
        for (std::size_t i = 0; i < patterns_.size(); ++i) {
            auto & p = patterns_[i];
            if (p.graph.order() == 0)
                throw InvariantError("pattern " + std::to_string(i) + " has no vertices");
            if (p.root && *p.root >= p.graph.order())
                throw InvariantError("pattern " + std::to_string(i) + " has an out-of-range root");
            if (p.name.empty())
                p.name = "F" + std::to_string(i + 1);
            auto label = p.root ? canonical_form(p.rooted()) : canonical_form(p.graph);
            if (!seen.insert(label).second)
                throw InvariantError("pattern '" + p.name + "' is isomorphic to an earlier member");
        }
    }

    PatternSet(std::initializer_list<Graph> graphs) : PatternSet(wrap(graphs)) {}

    std::size_t size() const noexcept { return patterns_.size(); }
    const Pattern & operator[](std::size_t i) const { return patterns_[i]; }
    auto begin() const { return patterns_.begin(); }
    auto end() const { return patterns_.end(); }
    const std::string & name() const noexcept { return name_; }

    std::vector<std::string> names() const
    {
        std::vector<std::string> out;
        for (const auto & p : patterns_)
            out.push_back(p.name);
        return out;
    }

private:
    static std::vector<Pattern> wrap(std::initializer_list<Graph> graphs)
    {
        std::vector<Pattern> out;
        for (const auto & g : graphs)
            out.push_back({g, std::nullopt, {}});
        return out;
    }

    std::vector<Pattern> patterns_;
    std::string name_;
};

/// Builds a set from comma-separated tokens: named patterns (P3, C4, K3, PAW,
/// vertex) or paths to edge-list files.
inline PatternSet parse_pattern_list(const std::string & spec)
{
    std::vector<Pattern> out;
    std::size_t start = 0;
    while (start <= spec.size()) {
        auto end = spec.find(',', start);
        if (end == std::string::npos)
            end = spec.size();
        auto tok = spec.substr(start, end - start);
        while (!tok.empty() && tok.front() == ' ')
            tok.erase(tok.begin());
        while (!tok.empty() && tok.back() == ' ')
            tok.pop_back();
        if (!tok.empty()) {
            Graph g;
            try {
                g = parse_pattern_name(tok);
            }
            catch (const ParseError &) {
                g = read_edge_list_file(tok);
            }
            out.push_back({std::move(g), std::nullopt, tok});
        }
        start = end + 1;
    }
    return PatternSet(std::move(out), spec);
}

} // namespace homscope
