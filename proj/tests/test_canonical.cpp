#include <gtest/gtest.h>

#include <random>
#include <set>

#include "homscope/canonical.hpp"
#include "oracles.hpp"

using namespace homscope;

namespace {

std::vector<Graph> all_labelled_graphs(std::size_t n)
{
    std::vector<Edge> slots;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            slots.emplace_back(i, j);
    std::vector<Graph> out;
    for (std::uint64_t mask = 0; mask < (1ULL << slots.size()); ++mask) {
        std::vector<Edge> e;
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (mask >> k & 1)
                e.push_back(slots[k]);
        out.emplace_back(n, e);
    }
    return out;
}

} // namespace

TEST(CanonicalForm, RelabelledPathMatches)
{
    Graph p3(3, {{0, 1}, {1, 2}});
    Graph relabelled(3, {{2, 0}, {0, 1}});
    EXPECT_EQ(canonical_form(p3), canonical_form(relabelled));
    EXPECT_NE(canonical_form(complete_graph(3)), canonical_form(p3));
}

TEST(CanonicalForm, ElevenGraphsOnFourVertices)
{
    std::set<std::string> labels;
    for (const auto & g : all_labelled_graphs(4))
        labels.insert(canonical_form(g));
    EXPECT_EQ(labels.size(), 11u);
}

TEST(CanonicalForm, ThirtyFourGraphsOnFiveVertices)
{
    std::set<std::string> labels;
    for (const auto & g : all_labelled_graphs(5))
        labels.insert(canonical_form(g));
    EXPECT_EQ(labels.size(), 34u);
}

TEST(CanonicalForm, AgreesWithBruteForceIsomorphism)
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 300; ++t) {
        auto n = 1 + rng() % 6;
        auto a = oracle::random_graph(rng, n, 0.5);
        auto b = (t % 2 == 0) ? permuted(a, oracle::random_permutation(rng, n)) : oracle::random_graph(rng, n, 0.5);
        EXPECT_EQ(canonical_form(a) == canonical_form(b), oracle::isomorphic(a, b));
    }
}

TEST(CanonicalForm, InvariantUnderRandomRelabelling)
{
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        auto g = oracle::random_graph_between(rng, 1, 12);
        auto h = permuted(g, oracle::random_permutation(rng, g.order()));
        EXPECT_EQ(canonical_form(g), canonical_form(h));
        EXPECT_EQ(canonical_graph(g), canonical_graph(h));
    }
}

TEST(CanonicalForm, RegularAndSymmetricGraphs)
{
    std::mt19937_64 rng(8);
    const Graph petersen(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                              {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
    for (const auto & g : {complete_graph(10), cycle_graph(10), petersen, Graph(10)}) {
        auto h = permuted(g, oracle::random_permutation(rng, g.order()));
        EXPECT_EQ(canonical_form(g), canonical_form(h));
    }
    // two 5-cycles vs a 10-cycle: both 2-regular, not isomorphic
    EXPECT_NE(canonical_form(disjoint_union(cycle_graph(5), cycle_graph(5))), canonical_form(cycle_graph(10)));
}

TEST(CanonicalForm, RootedDistinguishesRootOrbit)
{
    RootedGraph end(path_graph(3), 0), centre(path_graph(3), 1), other_end(path_graph(3), 2);
    EXPECT_NE(canonical_form(end), canonical_form(centre));
    EXPECT_EQ(canonical_form(end), canonical_form(other_end));
    auto c = canonical_graph(centre);
    EXPECT_EQ(c.root, 0u);
    EXPECT_TRUE(are_isomorphic(c, centre));
}

TEST(CanonicalForm, CapIsEnforced)
{
    CanonicalOptions opt;
    opt.max_vertices = 5;
    EXPECT_THROW(canonical_form(path_graph(6), opt), ResourceError);
}
