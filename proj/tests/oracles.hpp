#pragma once

// Independent reference implementations used only by tests. None of these
// share code paths with the library's counters or refiners.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "homscope/graph.hpp"

namespace oracle {

using homscope::Edge;
using homscope::Graph;
using homscope::Vertex;

inline std::vector<std::vector<bool>> adjacency(const Graph & g)
{
    std::vector<std::vector<bool>> a(g.order(), std::vector<bool>(g.order(), false));
    for (auto [u, v] : g.edges())
        a[u][v] = a[v][u] = true;
    return a;
}

struct MapCounts {
    std::uint64_t hom = 0, inj = 0, surj = 0, edge_surj = 0;
};

/// Enumerates all |V_g|^|V_f| maps (odometer order), optionally with f_root -> g_root fixed.
inline MapCounts brute_force(const Graph & f, const Graph & g, int f_root = -1, int g_root = -1)
{
    MapCounts out;
    const std::size_t k = f.order(), n = g.order();
    if (n == 0)
        return out;
    const auto a = adjacency(g);
    const auto fe = f.edges();
    std::vector<std::size_t> phi(k, 0);
    while (true) {
        bool ok = f_root < 0 || phi[static_cast<std::size_t>(f_root)] == static_cast<std::size_t>(g_root);
        for (auto [u, v] : fe)
            if (ok && !a[phi[u]][phi[v]])
                ok = false;
        if (ok) {
            ++out.hom;
            std::set<std::size_t> img(phi.begin(), phi.end());
            if (img.size() == k)
                ++out.inj;
            if (img.size() == n) {
                ++out.surj;
                std::set<std::pair<std::size_t, std::size_t>> hit;
                for (auto [u, v] : fe)
                    hit.emplace(std::min(phi[u], phi[v]), std::max(phi[u], phi[v]));
                if (hit.size() == g.size())
                    ++out.edge_surj;
            }
        }
        std::size_t i = 0;
        while (i < k && ++phi[i] == n)
            phi[i++] = 0;
        if (i == k)
            break;
    }
    return out;
}

/// All permutations checked for being automorphisms.
inline std::uint64_t automorphisms(const Graph & f)
{
    std::vector<Vertex> p(f.order());
    std::iota(p.begin(), p.end(), 0);
    const auto a = adjacency(f);
    std::uint64_t c = 0;
    do {
        bool ok = true;
        for (auto [u, v] : f.edges())
            if (!a[p[u]][p[v]]) {
                ok = false;
                break;
            }
        c += ok;
    } while (std::next_permutation(p.begin(), p.end()));
    return c;
}

/// Isomorphism by trying all bijections.
inline bool isomorphic(const Graph & x, const Graph & y)
{
    if (x.order() != y.order() || x.size() != y.size())
        return false;
    std::vector<Vertex> p(x.order());
    std::iota(p.begin(), p.end(), 0);
    const auto a = adjacency(y);
    do {
        bool ok = true;
        for (auto [u, v] : x.edges())
            if (!a[p[u]][p[v]]) {
                ok = false;
                break;
            }
        if (ok)
            return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

inline Graph random_graph(std::mt19937_64 & rng, std::size_t n, double p)
{
    std::bernoulli_distribution coin(p);
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (coin(rng))
                e.emplace_back(i, j);
    return Graph(n, e);
}

inline Graph random_graph_between(std::mt19937_64 & rng, std::size_t min_n, std::size_t max_n)
{
    std::uniform_int_distribution<std::size_t> nd(min_n, max_n);
    std::uniform_real_distribution<double> pd(0.2, 0.7);
    const auto n = nd(rng);
    return random_graph(rng, n, pd(rng));
}

inline std::vector<Vertex> random_permutation(std::mt19937_64 & rng, std::size_t n)
{
    std::vector<Vertex> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// Classic 1-WL: colours are nested (colour, multiset) tuples interned in a map.
/// Returns the partition after each round 0..rounds as sorted lists of vertex classes.
inline std::vector<std::set<std::set<Vertex>>> one_wl_partitions(const Graph & g, std::size_t rounds)
{
    std::vector<int> col(g.order(), 0);
    std::vector<std::set<std::set<Vertex>>> out;
    auto partition = [&] {
        std::map<int, std::set<Vertex>> cls;
        for (Vertex v = 0; v < g.order(); ++v)
            cls[col[v]].insert(v);
        std::set<std::set<Vertex>> p;
        for (auto & [c, s] : cls)
            p.insert(s);
        return p;
    };
    out.push_back(partition());
    for (std::size_t r = 0; r < rounds; ++r) {
        std::map<std::pair<int, std::multiset<int>>, int> intern;
        std::vector<int> next(g.order());
        for (Vertex v = 0; v < g.order(); ++v) {
            std::multiset<int> ms;
            for (Vertex w : g.neighbors(v))
                ms.insert(col[w]);
            auto key = std::make_pair(col[v], ms);
            auto it = intern.find(key);
            if (it == intern.end())
                it = intern.emplace(key, static_cast<int>(intern.size())).first;
            next[v] = it->second;
        }
        col = next;
        out.push_back(partition());
    }
    return out;
}

template <typename Coloring>
std::set<std::set<Vertex>> partition_of(const Coloring & c)
{
    std::map<std::uint64_t, std::set<Vertex>> cls;
    for (Vertex v = 0; v < c.size(); ++v)
        cls[c[v]].insert(v);
    std::set<std::set<Vertex>> p;
    for (auto & [k, s] : cls)
        p.insert(s);
    return p;
}

} // namespace oracle
