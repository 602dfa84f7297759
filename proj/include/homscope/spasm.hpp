#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "homscope/canonical.hpp"
#include "homscope/error.hpp"
#include "homscope/graph.hpp"
#include "homscope/hom.hpp"

namespace homscope {

struct SpasmOptions {
    std::size_t max_pattern_vertices = 10;
};

/// One homomorphic image F' of F.
struct SpasmMember {
    Graph graph;          ///< canonical representative
    std::string label;    ///< canonical form
    /// Sum over independent-set partitions P with F/P = F' of
    /// prod_B (-1)^(|B|-1) (|B|-1)!; inj(F,G) = sum coefficient * hom(F',G).
    Count coefficient = 0;
    /// Number of such partitions; surj(F,F') = partitions * aut(F').
    std::size_t partitions = 0;
};

struct Spasm {
    std::vector<SpasmMember> members;

    bool contains(const Graph & g) const
    {
        const auto l = canonical_form(g);
        return std::any_of(members.begin(), members.end(), [&](const auto & m) { return m.label == l; });
    }
};

namespace detail {

class PartitionWalker {
public:
    explicit PartitionWalker(const Graph & f) : f_(f), block_of_(f.order(), 0) {}

    std::map<std::string, SpasmMember> run()
    {
        if (f_.order() > 0)
            assign(0);
        return std::move(images_);
    }

private:
    void assign(Vertex v)
    {
        if (v == f_.order()) {
            emit();
            return;
        }
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            const auto & blk = blocks_[b];
            if (std::any_of(blk.begin(), blk.end(), [&](Vertex u) { return f_.has_edge(u, v); }))
                continue;
            blocks_[b].push_back(v);
            block_of_[v] = static_cast<Vertex>(b);
            assign(v + 1);
            blocks_[b].pop_back();
        }
        blocks_.push_back({v});
        block_of_[v] = static_cast<Vertex>(blocks_.size() - 1);
        assign(v + 1);
        blocks_.pop_back();
    }

    void emit()
    {
        std::vector<Edge> e;
        for (auto [u, v] : f_.edges()) {
            auto a = block_of_[u], b = block_of_[v];
            e.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        Graph q(blocks_.size(), e);
        Count mobius = 1;
        for (const auto & blk : blocks_) {
            Count fact = 1;
            for (std::size_t i = 2; i < blk.size(); ++i)
                fact *= i;
            mobius *= (blk.size() % 2 == 1) ? fact : Count(-fact);
        }
        auto label = canonical_form(q);
        auto [it, fresh] = images_.try_emplace(label);
        if (fresh) {
            it->second.graph = canonical_graph(q);
            it->second.label = label;
        }
        it->second.coefficient += mobius;
        ++it->second.partitions;
    }

    const Graph & f_;
    std::vector<std::vector<Vertex>> blocks_;
    std::vector<Vertex> block_of_;
    std::map<std::string, SpasmMember> images_;
};

} // namespace detail

/// All homomorphic images of f up to isomorphism, obtained by merging
/// independent vertex sets. Ordered by decreasing vertex count, then edge count.
inline Spasm spasm(const Graph & f, const SpasmOptions & opt = {})
{
    if (f.order() > opt.max_pattern_vertices)
        throw ResourceError("spasm: pattern has " + std::to_string(f.order()) + " vertices, cap is "
                            + std::to_string(opt.max_pattern_vertices));
    auto images = detail::PartitionWalker(f).run();
    Spasm s;
    for (auto & [label, m] : images)
        s.members.push_back(std::move(m));
    std::stable_sort(s.members.begin(), s.members.end(), [](const auto & a, const auto & b) {
        if (a.graph.order() != b.graph.order())
            return a.graph.order() > b.graph.order();
        if (a.graph.size() != b.graph.size())
            return a.graph.size() > b.graph.size();
        return a.label < b.label;
    });
    return s;
}

/// sub(f, g) computed from homomorphism counts into g of the spasm of f.
inline Count sub_via_spasm(const Graph & f, const Graph & g, const SpasmOptions & sopt = {}, const CountOptions & copt = {})
{
    const auto s = spasm(f, sopt);
    Count inj = 0;
    for (const auto & m : s.members)
        if (m.coefficient != 0)
            inj += m.coefficient * count_hom(m.graph, g, copt);
    if (inj < 0)
        throw InternalError("spasm inversion produced a negative injective count");
    const Count aut = count_aut(f, copt);
    if (inj % aut != 0)
        throw InternalError("spasm inversion: inj(F,G) not divisible by aut(F)");
    return inj / aut;
}

/// Checks hom(f2, g) >= hom(f1, g); requires f1 to be in spasm(f2).
inline bool spasm_lower_bound_check(const Graph & f1, const Graph & f2, const Graph & g, const CountOptions & opt = {})
{
    if (!spasm(f2).contains(f1))
        throw InvalidArgument("spasm_lower_bound_check: first pattern is not in the spasm of the second");
    return count_hom(f2, g, opt) >= count_hom(f1, g, opt);
}

/// Envelope [m, m^2] for hom(P3, G) given m = hom(P2, G).
inline std::pair<Count, Count> p3_interval(const Count & m)
{
    if (m < 0)
        throw InvalidArgument("p3_interval: negative count");
    return {m, m * m};
}

} // namespace homscope
