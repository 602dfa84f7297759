#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <random>
#include <set>

#include "homscope/bounds.hpp"
#include "homscope/io_json.hpp"
#include "oracles.hpp"

using namespace homscope;

namespace {

PatternSet vertex_set() { return PatternSet({Pattern{single_vertex(), 0, "vertex"}}); }

GraphDataset graph_dataset(std::vector<Graph> graphs, std::vector<std::size_t> labels, std::size_t k)
{
    GraphDataset ds;
    ds.graphs = std::move(graphs);
    ds.graph_labels = std::move(labels);
    ds.num_classes = k;
    use_all_for_training(ds);
    ds.validate();
    return ds;
}

GraphDataset random_dataset(std::uint64_t seed, std::size_t per_class)
{
    std::mt19937_64 rng(seed);
    std::vector<Graph> graphs;
    std::vector<std::size_t> labels;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const std::size_t c = i % 2;
        graphs.push_back(oracle::random_graph(rng, 5 + rng() % 6, c ? 0.5 : 0.25));
        labels.push_back(c);
    }
    return graph_dataset(graphs, labels, 2);
}

/// Graph features built from the test's own 1-WL oracle: stacked per-round class
/// sizes, with classes named by their (round, nested signature) so they are shared
/// across graphs.
FeatureMatrix one_wl_features(const GraphDataset & ds, std::size_t rounds)
{
    std::vector<std::vector<std::vector<std::string>>> names(ds.graphs.size());
    for (std::size_t gi = 0; gi < ds.graphs.size(); ++gi) {
        const auto & g = ds.graphs[gi];
        std::vector<std::string> sig(g.order(), "*");
        names[gi].push_back(sig);
        for (std::size_t r = 0; r < rounds; ++r) {
            std::vector<std::string> next(g.order());
            for (Vertex v = 0; v < g.order(); ++v) {
                std::multiset<std::string> ms;
                for (Vertex w : g.neighbors(v))
                    ms.insert(sig[w]);
                std::string s = "(" + sig[v] + "|";
                for (const auto & x : ms)
                    s += x + ",";
                next[v] = s + ")";
            }
            sig = next;
            names[gi].push_back(sig);
        }
    }
    std::map<std::pair<std::size_t, std::string>, std::uint32_t> column;
    for (const auto & per_graph : names)
        for (std::size_t r = 0; r <= rounds; ++r)
            for (const auto & s : per_graph[r])
                column.try_emplace({r, s}, 0);
    std::uint32_t next = 0;
    for (auto & [key, id] : column)
        id = next++;
    FeatureMatrix fm;
    fm.dim = column.size();
    for (std::size_t gi = 0; gi < ds.graphs.size(); ++gi) {
        std::map<std::uint32_t, double> acc;
        for (std::size_t r = 0; r <= rounds; ++r)
            for (const auto & s : names[gi][r])
                acc[column.at({r, s})] += 1.0;
        SparseRow row;
        for (auto [i, v] : acc) {
            row.idx.push_back(i);
            row.val.push_back(v);
        }
        fm.rows.push_back(row);
        fm.labels.push_back(ds.graph_labels[gi]);
    }
    return fm;
}

} // namespace

TEST(PairSampling, SizesAndDisjointness)
{
    std::vector<std::size_t> twenty(20), twenty_one(21);
    std::iota(twenty.begin(), twenty.end(), 0);
    std::iota(twenty_one.begin(), twenty_one.end(), 100);
    auto s = stratified_pair_sampling({twenty, twenty_one}, 2, 9);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].pair_size, 5u);
    EXPECT_EQ(s[1].pair_size, 5u);
    for (std::size_t c = 0; c < 2; ++c) {
        ASSERT_EQ(s[c].pairs.size(), 2u);
        std::set<std::size_t> used;
        for (const auto & [a, b] : s[c].pairs) {
            EXPECT_EQ(a.size(), 5u);
            EXPECT_EQ(b.size(), 5u);
            used.insert(a.begin(), a.end());
            used.insert(b.begin(), b.end());
        }
        EXPECT_EQ(used.size(), 20u);
    }
    auto again = stratified_pair_sampling({twenty, twenty_one}, 2, 9);
    EXPECT_EQ(again[0].pairs, s[0].pairs);
    EXPECT_EQ(again[1].pairs, s[1].pairs);
    auto other = stratified_pair_sampling({twenty, twenty_one}, 2, 10);
    EXPECT_NE(other[0].pairs, s[0].pairs);
}

TEST(SplitMix, KnownStream)
{
    // reference values of the splitmix64 generator seeded with 0
    SplitMix64 r(0);
    EXPECT_EQ(r.next(), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(r.next(), 0x6e789e6aa1b965f4ULL);
    EXPECT_EQ(r.next(), 0x06c45d188009454fULL);
}

TEST(GraphBound, IdenticalGraphsCollapseToResidual)
{
    std::vector<Graph> graphs;
    std::vector<std::size_t> labels;
    for (int i = 0; i < 8; ++i) {
        graphs.push_back(i % 2 ? cycle_graph(5) : complete_graph(4));
        labels.push_back(static_cast<std::size_t>(i % 2));
    }
    auto ds = graph_dataset(graphs, labels, 2);
    auto p = default_bound_params(Task::graph);
    PatternSet f({Pattern{single_vertex(), 0, "vertex"}, Pattern{complete_graph(3), 0, "K3"}});
    auto rep = graph_bound(ds, f, p);
    for (const auto & t : rep.classes)
        EXPECT_EQ(t.beta, 0.0);
    EXPECT_EQ(rep.m, 4u);
    EXPECT_DOUBLE_EQ(rep.bound, std::sqrt(std::log(2.0 / 0.01) / 8.0));
    EXPECT_EQ(rep.bound, rep.residual);
}

TEST(GraphBound, ReportReassembles)
{
    auto ds = random_dataset(71, 10);
    auto p = default_bound_params(Task::graph);
    p.n_pairs = 2;
    p.depth = 2;
    auto rep = graph_bound(ds, vertex_set(), p);
    EXPECT_EQ(rep.bound, rep.reassemble());
    EXPECT_NEAR(rep.bound, rep.divergence_component + rep.concentration_component + rep.residual, 1e-12);
    for (const auto & t : rep.classes) {
        EXPECT_EQ(t.m_c, 10u);
        EXPECT_EQ(t.pair_size, 2u);
        EXPECT_EQ(t.kl.size(), 2u);
        EXPECT_FALSE(t.degenerate);
        EXPECT_TRUE(std::isfinite(t.div_term));
    }
    EXPECT_FALSE(rep.any_degenerate());
}

TEST(GraphBound, ScalingAndConfidence)
{
    auto ds = random_dataset(72, 12);
    auto p = default_bound_params(Task::graph);
    auto base = graph_bound(ds, vertex_set(), p);
    auto q = p;
    q.lip_over_gamma *= 2;
    auto doubled = graph_bound(ds, vertex_set(), q);
    EXPECT_NEAR(doubled.divergence_component, 2 * base.divergence_component, 1e-12);
    EXPECT_EQ(doubled.residual, base.residual);
    auto tighter = p;
    tighter.delta = 0.001;
    EXPECT_GT(graph_bound(ds, vertex_set(), tighter).bound, base.bound);
}

TEST(GraphBound, VertexPatternEqualsOneWlFeatures)
{
    for (std::uint64_t seed : {73, 74, 75}) {
        auto ds = random_dataset(seed, 8);
        for (std::size_t depth : {0, 1, 2, 3}) {
            auto p = default_bound_params(Task::graph);
            p.depth = depth;
            auto ours = graph_bound(ds, vertex_set(), p);
            auto reference = bound_from_features(Task::graph, one_wl_features(ds, depth), ds.train, 2, p);
            EXPECT_EQ(ours.bound, reference.bound) << "depth " << depth;
        }
    }
}

TEST(GraphBound, DegenerateClassesUseOmegaCeiling)
{
    // class 1 has 3 graphs: pair size 1 is too small for the k-NN estimator
    std::vector<Graph> graphs = {path_graph(3), path_graph(4), path_graph(5), path_graph(6),
                                 cycle_graph(3), cycle_graph(4), cycle_graph(6)};
    auto ds = graph_dataset(graphs, {0, 0, 0, 0, 1, 1, 1}, 2);
    auto p = default_bound_params(Task::graph);
    p.depth = 0;
    auto rep = graph_bound(ds, vertex_set(), p);
    EXPECT_TRUE(rep.classes[1].degenerate);
    EXPECT_EQ(rep.classes[1].omega, std::vector<double>{1.0});
    EXPECT_DOUBLE_EQ(rep.classes[1].div_term, rep.classes[1].beta);
    EXPECT_TRUE(rep.any_degenerate());
    EXPECT_FALSE(rep.classes[0].degenerate);
}

TEST(GraphBound, ParameterErrors)
{
    auto ds = random_dataset(76, 4);
    auto p = default_bound_params(Task::graph);
    p.delta = 1.0;
    EXPECT_THROW(graph_bound(ds, vertex_set(), p), InvalidArgument);
    p = default_bound_params(Task::graph);
    p.n_pairs = 0;
    EXPECT_THROW(graph_bound(ds, vertex_set(), p), InvalidArgument);
    p = default_bound_params(Task::graph);
    p.n_pairs = 10;
    EXPECT_THROW(graph_bound(ds, vertex_set(), p), InvalidArgument);
    GraphDataset nodes;
    nodes.task = Task::node;
    EXPECT_THROW(graph_bound(nodes, vertex_set(), p), InvalidArgument);
}

TEST(NodeBound, SingleClassTriangleCollapses)
{
    GraphDataset ds;
    ds.task = Task::node;
    ds.graphs = {complete_graph(3)};
    ds.node_labels = {{0, 0, 0}};
    ds.num_classes = 1;
    use_all_for_training(ds);
    auto p = default_bound_params(Task::node);
    EXPECT_EQ(p.lip_over_gamma, 6.0);
    auto rep = node_bound(ds, vertex_set(), p);
    EXPECT_EQ(rep.classes[0].beta, 0.0);
    EXPECT_EQ(rep.bound, rep.residual);
    p.depth = 0;
    auto ego = node_bound(ds, vertex_set(), p, true);
    EXPECT_EQ(ego.bound, ego.residual);
}

TEST(NodeBound, EgoDepthZeroHasNoDivergence)
{
    GraphDataset ds;
    ds.task = Task::node;
    ds.graphs = {cycle_graph(6), path_graph(6)};
    ds.node_labels = {{0, 1, 0, 1, 0, 1}, {1, 0, 1, 0, 1, 0}};
    ds.num_classes = 2;
    use_all_for_training(ds);
    auto p = default_bound_params(Task::node);
    p.depth = 0;
    p.kl_method = KlMethod::plugin;
    auto rep = node_bound(ds, vertex_set(), p, true);
    for (const auto & t : rep.classes) {
        EXPECT_EQ(t.beta, 0.0);
        for (double kl : t.kl)
            EXPECT_EQ(kl, 0.0);
    }
}

TEST(Golden, MatchesIndependentEvaluation)
{
    std::ifstream in(std::string(HOMSCOPE_FIXTURES_DIR) + "/bound_golden.json");
    ASSERT_TRUE(in);
    const auto golden = Json::parse(in);
    ASSERT_EQ(golden.at("cases").size(), 4u);
    for (const auto & c : golden.at("cases")) {
        auto ds = dataset_from_json(c.at("dataset"));
        const auto & jp = c.at("params");
        BoundParams p;
        p.lip_over_gamma = jp.at("lip_over_gamma");
        p.delta = jp.at("delta");
        p.n_pairs = jp.at("n_pairs");
        p.knn_k = jp.at("knn_k");
        p.depth = jp.at("depth");
        p.seed = jp.at("seed");
        p.kl_method = jp.at("kl_method") == "knn" ? KlMethod::knn : KlMethod::plugin;
        auto rep = c.at("task") == "graph" ? graph_bound(ds, vertex_set(), p) : node_bound(ds, vertex_set(), p);
        const auto & e = c.at("expected");
        EXPECT_NEAR(rep.bound, e.at("bound").get<double>(), 1e-9);
        EXPECT_NEAR(rep.residual, e.at("residual").get<double>(), 1e-9);
        EXPECT_EQ(rep.m, e.at("m").get<std::size_t>());
        for (std::size_t k = 0; k < 2; ++k) {
            const auto & ec = e.at("classes")[k];
            EXPECT_NEAR(rep.classes[k].beta, ec.at("beta").get<double>(), 1e-9);
            EXPECT_EQ(rep.classes[k].pair_size, ec.at("pair_size").get<std::size_t>());
            const auto kl = ec.at("kl")[0];
            if (kl.is_null())
                EXPECT_TRUE(std::isinf(rep.classes[k].kl[0]));
            else
                EXPECT_NEAR(rep.classes[k].kl[0], kl.get<double>(), 1e-9);
        }
    }
}

TEST(Expectation, SingleRepeatMatchesBound)
{
    auto ds = random_dataset(77, 10);
    auto p = default_bound_params(Task::graph);
    p.seed = 5;
    auto b = graph_bound(ds, vertex_set(), p);
    auto e = monte_carlo_expectation_bound(ds, vertex_set(), p, 1);
    EXPECT_EQ(e.mean, b.divergence_component);
    EXPECT_EQ(e.stderr_, 0.0);
    EXPECT_DOUBLE_EQ(e.residual, std::sqrt(std::log(1.0 / 0.01) / (2.0 * 20)));
    EXPECT_EQ(e.bound, e.mean + e.residual);
}

TEST(Expectation, IdenticalGraphsHaveNoSpread)
{
    std::vector<Graph> graphs(12, cycle_graph(5));
    std::vector<std::size_t> labels(12, 0);
    auto ds = graph_dataset(graphs, labels, 1);
    auto e = monte_carlo_expectation_bound(ds, vertex_set(), default_bound_params(Task::graph), 10);
    EXPECT_EQ(e.mean, 0.0);
    EXPECT_EQ(e.stderr_, 0.0);
}

TEST(Expectation, StandardErrorShrinksWithRepeats)
{
    auto ds = random_dataset(78, 20);
    auto p = default_bound_params(Task::graph);
    p.n_pairs = 2;
    p.depth = 2;
    auto few = monte_carlo_expectation_bound(ds, vertex_set(), p, 10);
    auto many = monte_carlo_expectation_bound(ds, vertex_set(), p, 100);
    EXPECT_GT(few.stderr_, 0.0);
    EXPECT_LT(many.stderr_, few.stderr_);
    EXPECT_EQ(many.divergence_samples.size(), 100u);
    EXPECT_EQ(few.divergence_samples[0], many.divergence_samples[0]);
}
