#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "homscope/dataset.hpp"
#include "homscope/divergence.hpp"
#include "homscope/error.hpp"
#include "homscope/fwl.hpp"
#include "homscope/pattern_set.hpp"

namespace homscope {

/// splitmix64; the sampling stream is fixed so reports are reproducible
/// across platforms and standard libraries.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Fisher-Yates from the back: swap v[i] with v[next() % (i + 1)].
    template <typename T>
    void shuffle(std::vector<T> & v)
    {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[next() % i]);
    }

private:
    std::uint64_t state_;
};

enum class KlMethod {
    knn,      ///< k-NN estimator on the feature vectors
    plugin,   ///< exact KL of the empirical distributions (rows as atoms)
};

inline std::string to_string(KlMethod m) { return m == KlMethod::knn ? "knn" : "plugin"; }

struct BoundParams {
    double lip_over_gamma = 3.0;
    double delta = 0.01;
    std::size_t n_pairs = 1;
    std::size_t knn_k = 1;
    std::size_t depth = 1;
    std::uint64_t seed = 0;
    KlMethod kl_method = KlMethod::knn;

    void validate() const
    {
        if (!(delta > 0.0 && delta < 1.0))
            throw InvalidArgument("delta must lie in (0, 1)");
        if (n_pairs < 1)
            throw InvalidArgument("need at least one sample pair");
        if (!(lip_over_gamma > 0.0))
            throw InvalidArgument("L_c/gamma must be positive");
        if (knn_k < 1)
            throw InvalidArgument("k-NN order must be at least 1");
    }
};

/// Default L_c/gamma: 3 for graph tasks, 6 for node tasks.
inline BoundParams default_bound_params(Task task)
{
    BoundParams p;
    p.lip_over_gamma = task == Task::graph ? 3.0 : 6.0;
    return p;
}

/// Disjoint (S^j, S~^j) index pairs for one class.
struct ClassPairs {
    std::size_t pair_size = 0;
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> pairs;
};

/// Per class: shuffle the class's items, then cut 2n consecutive blocks of
/// floor(m_c / 2n) items. `items_by_class[c]` lists the class's item ids.
inline std::vector<ClassPairs> stratified_pair_sampling(const std::vector<std::vector<std::size_t>> & items_by_class,
                                                        std::size_t n_pairs, std::uint64_t seed)
{
    if (n_pairs < 1)
        throw InvalidArgument("need at least one sample pair");
    SplitMix64 rng(seed);
    std::vector<ClassPairs> out;
    for (const auto & members : items_by_class) {
        auto pool = members;
        rng.shuffle(pool);
        ClassPairs cp;
        cp.pair_size = pool.size() / (2 * n_pairs);
        auto at = pool.begin();
        for (std::size_t j = 0; j < n_pairs; ++j) {
            std::vector<std::size_t> s(at, at + static_cast<std::ptrdiff_t>(cp.pair_size));
            at += static_cast<std::ptrdiff_t>(cp.pair_size);
            std::vector<std::size_t> t(at, at + static_cast<std::ptrdiff_t>(cp.pair_size));
            at += static_cast<std::ptrdiff_t>(cp.pair_size);
            cp.pairs.emplace_back(std::move(s), std::move(t));
        }
        out.push_back(std::move(cp));
    }
    return out;
}

struct ClassTerm {
    std::size_t c = 0;
    std::size_t m_c = 0;
    std::size_t pair_size = 0;
    double weight = 0.0;       ///< empirical class frequency
    double beta = 0.0;         ///< diameter of the class's training features
    std::vector<double> kl;    ///< raw per-pair divergence values (before clamping)
    std::vector<double> omega; ///< Omega of the clamped values (1 for degenerate classes)
    double div_term = 0.0;     ///< (1/n) sum_j beta * Omega_j
    double conc_term = 0.0;    ///< 2 beta sqrt(log(2K/delta) / (n * pair_size))
    bool degenerate = false;   ///< pair_size too small to estimate a divergence
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> pairs;
};

struct BoundReport {
    Task task = Task::graph;
    BoundParams params;
    std::size_t num_classes = 0;
    std::size_t feature_dim = 0;
    std::vector<ClassTerm> classes;
    std::size_t m = 0;                  ///< sum_c pair_size
    double divergence_component = 0.0;  ///< sum_c weight * L/gamma * div_term
    double concentration_component = 0.0;
    double residual = 0.0;              ///< sqrt(log(2/delta) / (2m))
    double bound = 0.0;

    /// Recomputes the bound from the recorded per-class parts.
    double reassemble() const
    {
        double s = 0.0;
        for (const auto & t : classes)
            s += t.weight * params.lip_over_gamma * (t.div_term + t.conc_term);
        return s + residual;
    }

    bool any_degenerate() const
    {
        for (const auto & t : classes)
            if (t.degenerate && t.m_c > 0)
                return true;
        return false;
    }
};

/// Assembles the data-dependent bound from precomputed features.
///
/// Each class uses its training diameter as beta for every pair. Classes whose
/// pairs are too small for the divergence (fewer than max(2, k+1) items per
/// half for k-NN, fewer than 1 for plug-in) are flagged degenerate and use
/// Omega = 1; their concentration term divides by max(pair_size, 1).
inline BoundReport bound_from_features(Task task, const FeatureMatrix & fm, std::span<const std::size_t> train,
                                       std::size_t num_classes, const BoundParams & params)
{
    params.validate();
    if (train.empty())
        throw InvalidArgument("training split is empty");
    if (num_classes < 1)
        throw InvalidArgument("need at least one class");

    std::vector<std::vector<std::size_t>> by_class(num_classes);
    for (auto i : train) {
        const auto c = fm.labels.at(i);
        if (c >= num_classes)
            throw InvariantError("label " + std::to_string(c) + " >= class count");
        by_class[c].push_back(i);
    }
    const auto sampled = stratified_pair_sampling(by_class, params.n_pairs, params.seed);

    BoundReport rep;
    rep.task = task;
    rep.params = params;
    rep.num_classes = num_classes;
    rep.feature_dim = fm.dim;
    const double n = static_cast<double>(params.n_pairs);
    const double log_term = std::log(2.0 * static_cast<double>(num_classes) / params.delta);
    const std::size_t min_pair = params.kl_method == KlMethod::knn ? std::max<std::size_t>(2, params.knn_k + 1) : 1;

    for (std::size_t c = 0; c < num_classes; ++c) {
        ClassTerm t;
        t.c = c;
        t.m_c = by_class[c].size();
        t.pair_size = sampled[c].pair_size;
        t.weight = static_cast<double>(t.m_c) / static_cast<double>(train.size());
        t.pairs = sampled[c].pairs;
        if (t.m_c == 0) {
            t.degenerate = true;
            rep.classes.push_back(std::move(t));
            continue;
        }
        const auto dense = fm.dense(by_class[c]);
        t.beta = diameter(dense);
        t.degenerate = t.pair_size < min_pair;

        std::vector<std::size_t> pos(fm.rows.size());
        for (std::size_t k = 0; k < by_class[c].size(); ++k)
            pos[by_class[c][k]] = k;
        auto gather = [&](const std::vector<std::size_t> & items) {
            Sample s;
            for (auto i : items)
                s.push_back(dense[pos[i]]);
            return s;
        };

        double acc = 0.0;
        for (const auto & [a, b] : t.pairs) {
            double om = 1.0;
            double kl = std::numeric_limits<double>::quiet_NaN();
            if (!t.degenerate) {
                const auto sa = gather(a), sb = gather(b);
                kl = params.kl_method == KlMethod::knn ? knn_kl_estimate(sa, sb, params.knn_k) : empirical_kl(sa, sb);
                om = omega(clamp_divergence(kl));
            }
            t.kl.push_back(kl);
            t.omega.push_back(om);
            acc += t.beta * om;
        }
        t.div_term = acc / n;
        t.conc_term = 2.0 * t.beta
                      * std::sqrt(log_term / (n * static_cast<double>(std::max<std::size_t>(t.pair_size, 1))));
        rep.m += t.pair_size;
        rep.classes.push_back(std::move(t));
    }
    if (rep.m == 0)
        throw InvalidArgument("no class has enough training items to form sample pairs");

    for (const auto & t : rep.classes) {
        rep.divergence_component += t.weight * params.lip_over_gamma * t.div_term;
        rep.concentration_component += t.weight * params.lip_over_gamma * t.conc_term;
    }
    rep.residual = std::sqrt(std::log(2.0 / params.delta) / (2.0 * static_cast<double>(rep.m)));
    rep.bound = rep.reassemble();
    return rep;
}

inline BoundReport graph_bound(const GraphDataset & ds, const PatternSet & patterns, const BoundParams & params,
                               const CountOptions & counting = {})
{
    if (ds.task != Task::graph)
        throw InvalidArgument("graph bound needs graph-level labels");
    const auto fm = dataset_featurize(ds, patterns, {params.depth, Task::graph, false, counting});
    return bound_from_features(Task::graph, fm, ds.train, ds.num_classes, params);
}

/// Node-level bound over node representations; `ego` refines each node's
/// depth-hop ego-graph on its own.
inline BoundReport node_bound(const GraphDataset & ds, const PatternSet & patterns, const BoundParams & params,
                              bool ego = false, const CountOptions & counting = {})
{
    if (ds.task != Task::node)
        throw InvalidArgument("node bound needs node labels");
    const auto fm = dataset_featurize(ds, patterns, {params.depth, Task::node, ego, counting});
    return bound_from_features(Task::node, fm, ds.train, ds.num_classes, params);
}

// ---------------------------------------------------------------------------
// Monte-Carlo surrogate of the expectation bounds

struct ExpectationReport {
    Task task = Task::graph;
    std::size_t repeats = 0;
    std::vector<double> divergence_samples; ///< divergence component per repeat
    double mean = 0.0;
    double stderr_ = 0.0;
    /// sqrt(log(1/delta)/(2m)) for graphs, sqrt(log(2/delta)/(2m)) for nodes, m = training items
    double residual = 0.0;
    double bound = 0.0;
    BoundReport first; ///< full report of repeat 0 (seed = params.seed)
};

/// Seed of repeat r; repeat 0 keeps the configured seed.
inline std::uint64_t repeat_seed(std::uint64_t seed, std::size_t r)
{
    if (r == 0)
        return seed;
    SplitMix64 mix(seed ^ (0xd1b54a32d192ed03ULL * r));
    return mix.next();
}

inline ExpectationReport expectation_from_features(Task task, const FeatureMatrix & fm,
                                                   std::span<const std::size_t> train, std::size_t num_classes,
                                                   const BoundParams & params, std::size_t repeats)
{
    if (repeats < 1)
        throw InvalidArgument("need at least one repeat");
    ExpectationReport rep;
    rep.task = task;
    rep.repeats = repeats;
    for (std::size_t r = 0; r < repeats; ++r) {
        auto p = params;
        p.seed = repeat_seed(params.seed, r);
        auto b = bound_from_features(task, fm, train, num_classes, p);
        rep.divergence_samples.push_back(b.divergence_component);
        if (r == 0)
            rep.first = std::move(b);
    }
    const double k = static_cast<double>(repeats);
    rep.mean = std::accumulate(rep.divergence_samples.begin(), rep.divergence_samples.end(), 0.0) / k;
    if (repeats > 1) {
        double ss = 0.0;
        for (double x : rep.divergence_samples)
            ss += (x - rep.mean) * (x - rep.mean);
        rep.stderr_ = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
    }
    const double conf = task == Task::graph ? 1.0 / params.delta : 2.0 / params.delta;
    rep.residual = std::sqrt(std::log(conf) / (2.0 * static_cast<double>(train.size())));
    rep.bound = rep.mean + rep.residual;
    return rep;
}

inline ExpectationReport monte_carlo_expectation_bound(const GraphDataset & ds, const PatternSet & patterns,
                                                       const BoundParams & params, std::size_t repeats,
                                                       bool ego = false, const CountOptions & counting = {})
{
    const auto fm = dataset_featurize(ds, patterns, {params.depth, ds.task, ego, counting});
    return expectation_from_features(ds.task, fm, ds.train, ds.num_classes, params, repeats);
}

} // namespace homscope
