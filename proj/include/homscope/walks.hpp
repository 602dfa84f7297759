#pragma once

#include <vector>

#include "homscope/graph.hpp"
#include "homscope/hom.hpp"

// Walk counts from adjacency-matrix powers. These are an independent route to
// hom(P_k, G) and hom(C_k, G), used to cross-check the backtracking counter.

namespace homscope {

using CountMatrix = std::vector<std::vector<Count>>;

inline CountMatrix adjacency_matrix(const Graph & g)
{
    const auto n = g.order();
    CountMatrix a(n, std::vector<Count>(n, 0));
    for (auto [u, v] : g.edges())
        a[u][v] = a[v][u] = 1;
    return a;
}

inline CountMatrix multiply(const CountMatrix & a, const CountMatrix & b)
{
    const auto n = a.size();
    CountMatrix c(n, std::vector<Count>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline CountMatrix adjacency_power(const Graph & g, std::size_t k)
{
    const auto n = g.order();
    CountMatrix r(n, std::vector<Count>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        r[i][i] = 1;
    const auto a = adjacency_matrix(g);
    for (std::size_t i = 0; i < k; ++i)
        r = multiply(r, a);
    return r;
}

/// tr(A^k) = hom(C_k, G) for k >= 3.
inline Count closed_walk_count(const Graph & g, std::size_t k)
{
    const auto p = adjacency_power(g, k);
    Count t = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        t += p[i][i];
    return t;
}

/// Number of walks with k edges = hom(P_{k+1}, G).
inline Count walk_count(const Graph & g, std::size_t k)
{
    const auto p = adjacency_power(g, k);
    Count t = 0;
    for (const auto & row : p)
        for (const auto & x : row)
            t += x;
    return t;
}

} // namespace homscope
