#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "homscope/error.hpp"
#include "homscope/graph.hpp"

namespace homscope {

using Point = std::vector<double>;
using Sample = std::vector<Point>;

/// Probability vector over an indexed support shared by the compared distributions.
struct DiscreteDistribution {
    std::vector<Point> support;
    std::vector<double> prob;

    DiscreteDistribution(std::vector<Point> s, std::vector<double> p) : support(std::move(s)), prob(std::move(p))
    {
        if (support.size() != prob.size())
            throw InvalidArgument("support and probability sizes differ");
        double sum = 0.0;
        for (double x : prob) {
            if (x < 0.0)
                throw InvalidArgument("negative probability");
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw InvalidArgument("probabilities do not sum to 1");
    }
};

inline constexpr double kDistanceFloor = 1e-12;

inline void check_sample(const Sample & x, const char * what)
{
    if (x.empty())
        throw InvalidArgument(std::string(what) + " sample is empty");
    const auto d = x.front().size();
    for (const auto & p : x)
        if (p.size() != d)
            throw InvalidArgument(std::string(what) + " sample has rows of different dimension");
}

inline double euclidean(const Point & a, const Point & b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// k-NN KL estimator (Perez-Cruz):
//   D(x||y) ~ d/n sum_i log(nu_k(i) / rho_k(i)) + log(m / (n - 1))
// rho_k: k-th NN distance of x_i within x \ {x_i}; nu_k: k-th NN distance of x_i in y.

namespace detail {

inline double kth_smallest(std::vector<double> & d, std::size_t k)
{
    std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k - 1), d.end());
    return d[k - 1];
}

} // namespace detail

/// Raw estimate; can be negative. Callers clamp before using it as a divergence.
inline double knn_kl_estimate(const Sample & x, const Sample & y, std::size_t k = 1)
{
    check_sample(x, "first");
    check_sample(y, "second");
    if (x.front().size() != y.front().size())
        throw InvalidArgument("samples have different dimensions");
    if (k < 1)
        throw InvalidArgument("neighbour order k must be at least 1");
    if (x.size() < k + 1 || y.size() < k)
        throw InvalidArgument("insufficient samples for k-NN KL estimate with k=" + std::to_string(k));
    const auto n = x.size(), m = y.size();
    const auto d = static_cast<double>(x.front().size());
    double acc = 0.0;
    std::vector<double> within(n - 1), across(m);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t w = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                within[w++] = euclidean(x[i], x[j]);
        for (std::size_t j = 0; j < m; ++j)
            across[j] = euclidean(x[i], y[j]);
        const double rho = std::max(detail::kth_smallest(within, k), kDistanceFloor);
        const double nu = std::max(detail::kth_smallest(across, k), kDistanceFloor);
        acc += std::log(nu / rho);
    }
    return d / static_cast<double>(n) * acc + std::log(static_cast<double>(m) / static_cast<double>(n - 1));
}

inline double clamp_divergence(double v) { return v > 0.0 ? v : 0.0; }

/// Plug-in KL between the empirical distributions of two samples, treating
/// each distinct row as an atom. Infinite when x has an atom y lacks.
inline double empirical_kl(const Sample & x, const Sample & y)
{
    check_sample(x, "first");
    check_sample(y, "second");
    auto xs = x, ys = y;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double kl = 0.0;
    const double nx = static_cast<double>(xs.size()), ny = static_cast<double>(ys.size());
    for (std::size_t i = 0; i < xs.size();) {
        std::size_t j = i;
        while (j < xs.size() && xs[j] == xs[i])
            ++j;
        const auto [lo, hi] = std::equal_range(ys.begin(), ys.end(), xs[i]);
        const double p = static_cast<double>(j - i) / nx;
        const double q = static_cast<double>(hi - lo) / ny;
        if (q == 0.0)
            return std::numeric_limits<double>::infinity();
        kl += p * std::log(p / q);
        i = j;
    }
    return kl;
}

/// sum p_i log(p_i / q_i), +inf when p_i > 0 = q_i.
inline double exact_kl_discrete(const DiscreteDistribution & p, const DiscreteDistribution & q)
{
    if (p.prob.size() != q.prob.size())
        throw InvalidArgument("distributions have different supports");
    double kl = 0.0;
    for (std::size_t i = 0; i < p.prob.size(); ++i) {
        if (p.prob[i] == 0.0)
            continue;
        if (q.prob[i] == 0.0)
            return std::numeric_limits<double>::infinity();
        kl += p.prob[i] * std::log(p.prob[i] / q.prob[i]);
    }
    return kl;
}

inline double total_variation_discrete(const DiscreteDistribution & p, const DiscreteDistribution & q)
{
    if (p.prob.size() != q.prob.size())
        throw InvalidArgument("distributions have different supports");
    double s = 0.0;
    for (std::size_t i = 0; i < p.prob.size(); ++i)
        s += std::abs(p.prob[i] - q.prob[i]);
    return 0.5 * s;
}

// ---------------------------------------------------------------------------
// Exact W1 between equal-size empirical measures: min-cost perfect matching
// (Hungarian algorithm, O(n^3)) under Euclidean cost, divided by n.

namespace detail {

inline double min_cost_assignment(const std::vector<std::vector<double>> & cost)
{
    const std::size_t n = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    // 1-indexed potentials formulation
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j])
                    continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                }
                else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0.0;
    for (std::size_t j = 1; j <= n; ++j)
        total += cost[match[j] - 1][j - 1];
    return total;
}

} // namespace detail

inline double wasserstein1_exact(const Sample & x, const Sample & y)
{
    check_sample(x, "first");
    check_sample(y, "second");
    if (x.size() != y.size())
        throw InvalidArgument("W1 needs samples of equal size");
    if (x.front().size() != y.front().size())
        throw InvalidArgument("samples have different dimensions");
    std::vector<std::vector<double>> cost(x.size(), std::vector<double>(y.size()));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            cost[i][j] = euclidean(x[i], y[j]);
    return detail::min_cost_assignment(cost) / static_cast<double>(x.size());
}

/// Largest pairwise Euclidean distance; 0 for a single point.
inline double diameter(const Sample & x)
{
    check_sample(x, "input");
    double best = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            best = std::max(best, euclidean(x[i], x[j]));
    return best;
}

/// Omega(v) = sqrt(min(v/2, 1 - exp(-v))); Omega(+inf) = 1.
inline double omega(double v)
{
    if (v < 0.0 || std::isnan(v))
        throw InvalidArgument("omega needs a non-negative argument");
    if (std::isinf(v))
        return 1.0;
    return std::sqrt(std::min(0.5 * v, -std::expm1(-v)));
}

// ---------------------------------------------------------------------------
// Wasserstein-1 k-variance over sample pairs

using SamplePair = std::pair<Sample, Sample>;
using KlFunction = std::function<double(const Sample &, const Sample &)>;

/// Mean exact W1 over the pairs.
inline double k_variance_exact(const std::vector<SamplePair> & pairs)
{
    if (pairs.empty())
        throw InvalidArgument("k-variance needs at least one pair");
    double s = 0.0;
    for (const auto & [a, b] : pairs)
        s += wasserstein1_exact(a, b);
    return s / static_cast<double>(pairs.size());
}

/// Mean of beta * Omega(max(KL, 0)) over the pairs: the surrogate bounding the exact mode.
inline double k_variance_kl_chain(const std::vector<SamplePair> & pairs, double beta, const KlFunction & kl)
{
    if (pairs.empty())
        throw InvalidArgument("k-variance needs at least one pair");
    double s = 0.0;
    for (const auto & [a, b] : pairs)
        s += beta * omega(clamp_divergence(kl(a, b)));
    return s / static_cast<double>(pairs.size());
}

// ---------------------------------------------------------------------------
// Shearer coefficient against the edge pattern

/// c with H(X_{F->S}) <= c H(X_{P2->S}): the edge family covers every vertex
/// at least min-degree times, so c = |E| / min-degree.
inline boost::multiprecision::cpp_rational shearer_coefficient(const Graph & f)
{
    if (f.size() == 0)
        throw InvalidArgument("shearer coefficient needs a pattern with at least one edge");
    if (!is_connected(f))
        throw InvalidArgument("shearer coefficient needs a connected pattern");
    return boost::multiprecision::cpp_rational(f.size(), f.min_degree());
}

} // namespace homscope
