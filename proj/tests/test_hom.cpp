#include <gtest/gtest.h>

#include <random>

#include "homscope/hom.hpp"
#include "homscope/walks.hpp"
#include "oracles.hpp"

using namespace homscope;

TEST(CountHom, MatrixEntries)
{
    EXPECT_EQ(count_hom(path_graph(2), path_graph(3)), 4);
    EXPECT_EQ(count_hom(cycle_graph(4), complete_graph(3)), 18);
    EXPECT_EQ(count_hom(complete_graph(3), cycle_graph(4)), 0);
    EXPECT_EQ(count_hom(single_vertex(), cycle_graph(7)), 7);
}

TEST(CountHom, FourCycleIntoItself)
{
    // 4^4 map enumeration and tr(A^4) both give 32
    EXPECT_EQ(oracle::brute_force(cycle_graph(4), cycle_graph(4)).hom, 32u);
    EXPECT_EQ(closed_walk_count(cycle_graph(4), 4), 32);
    EXPECT_EQ(count_hom(cycle_graph(4), cycle_graph(4)), 32);
}

TEST(CountHom, IsolatedPatternVerticesMultiplyByHostOrder)
{
    Graph edge_plus_point(3, {{0, 1}});
    EXPECT_EQ(count_hom(edge_plus_point, complete_graph(4)), 12 * 4);
    EXPECT_EQ(count_hom(path_graph(2), Graph(3)), 0);
    EXPECT_THROW(count_hom(Graph(0), complete_graph(3)), InvalidArgument);
}

TEST(CountHom, AgreesWithBruteForce)
{
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        auto f = oracle::random_graph_between(rng, 1, 5);
        auto g = oracle::random_graph_between(rng, 1, 6);
        auto bf = oracle::brute_force(f, g);
        EXPECT_EQ(count_hom(f, g), bf.hom);
        EXPECT_EQ(count_inj(f, g), bf.inj);
        EXPECT_EQ(count_surj(f, g), bf.surj);
        EXPECT_EQ(count_edge_surj(f, g), bf.edge_surj);
    }
}

TEST(CountHom, TraceOracleForCycles)
{
    std::mt19937_64 rng(2);
    for (int t = 0; t < 30; ++t) {
        auto g = oracle::random_graph_between(rng, 3, 12);
        for (std::size_t k : {3, 4, 5})
            EXPECT_EQ(count_hom(cycle_graph(k), g), closed_walk_count(g, k));
        EXPECT_EQ(count_hom(path_graph(4), g), walk_count(g, 3));
    }
}

TEST(CountHom, InvariantUnderHostRelabelling)
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
        auto f = oracle::random_graph_between(rng, 1, 5);
        auto g = oracle::random_graph_between(rng, 1, 10);
        auto h = permuted(g, oracle::random_permutation(rng, g.order()));
        EXPECT_EQ(count_hom(f, g), count_hom(f, h));
    }
}

TEST(CountHom, BudgetExceededIsAnError)
{
    CountOptions opt;
    opt.max_search_nodes = 100;
    EXPECT_THROW(count_hom(path_graph(5), complete_graph(12), opt), ResourceError);
}

TEST(CountHom, LargeCountsStayExact)
{
    // 30^14 > 2^64
    Count expect = 1;
    for (int i = 0; i < 14; ++i)
        expect *= 30;
    EXPECT_EQ(count_hom(Graph(14), complete_graph(30)), expect);
    Graph edge_and_points(16, {{0, 1}});
    EXPECT_EQ(count_hom(edge_and_points, complete_graph(30)), expect * 30 * 29);
}

TEST(CountHomRooted, Examples)
{
    RootedGraph edge(path_graph(2), 0);
    for (Vertex v = 0; v < 4; ++v)
        EXPECT_EQ(count_hom_rooted(edge, RootedGraph(cycle_graph(4), v)), 2);
    EXPECT_EQ(count_hom_rooted(RootedGraph(single_vertex(), 0), RootedGraph(path_graph(5), 3)), 1);
}

TEST(CountHomRooted, SumOverHostRootsIsUnrootedCount)
{
    std::mt19937_64 rng(9);
    for (int t = 0; t < 60; ++t) {
        auto f = oracle::random_graph_between(rng, 1, 5);
        auto g = oracle::random_graph_between(rng, 1, 7);
        const Vertex r = static_cast<Vertex>(rng() % f.order());
        Count sum = 0;
        for (Vertex v = 0; v < g.order(); ++v) {
            auto c = count_hom_rooted(RootedGraph(f, r), RootedGraph(g, v));
            EXPECT_EQ(c, oracle::brute_force(f, g, static_cast<int>(r), static_cast<int>(v)).hom);
            sum += c;
        }
        EXPECT_EQ(sum, count_hom(f, g));
    }
    // (rooted P2, P3): 1 + 2 + 1 = 4
    RootedGraph e(path_graph(2), 0);
    EXPECT_EQ(count_hom_rooted(e, RootedGraph(path_graph(3), 0)) + count_hom_rooted(e, RootedGraph(path_graph(3), 1))
                  + count_hom_rooted(e, RootedGraph(path_graph(3), 2)),
              4);
}

TEST(CountInjSurjAut, Examples)
{
    EXPECT_EQ(count_aut(cycle_graph(4)), 8);
    EXPECT_EQ(oracle::automorphisms(cycle_graph(4)), 8u);
    EXPECT_EQ(count_aut(complete_graph(3)), 6);
    EXPECT_EQ(count_inj(path_graph(2), complete_graph(3)), 6);
    EXPECT_EQ(count_hom(path_graph(2), complete_graph(3)), 6);
    EXPECT_EQ(count_surj(path_graph(3), path_graph(2)), 2);
    EXPECT_EQ(count_surj(path_graph(2), path_graph(3)), 0);
}

TEST(CountInjSurjAut, AutEqualsInjEqualsSurjOnSelf)
{
    std::mt19937_64 rng(12);
    for (int t = 0; t < 40; ++t) {
        auto f = oracle::random_graph_between(rng, 1, 7);
        const auto aut = count_aut(f);
        EXPECT_EQ(aut, count_surj(f, f));
        EXPECT_EQ(aut, oracle::automorphisms(f));
    }
}

TEST(CountSub, Examples)
{
    EXPECT_EQ(count_sub(complete_graph(3), complete_graph(3)), 1);
    EXPECT_EQ(count_sub(path_graph(2), cycle_graph(4)), 4);
    EXPECT_EQ(count_inj(path_graph(2), cycle_graph(4)), 8);
    EXPECT_EQ(count_sub(path_graph(3), complete_graph(3)), 3);
    EXPECT_EQ(count_sub(cycle_graph(4), complete_graph(4)), 3);
}
