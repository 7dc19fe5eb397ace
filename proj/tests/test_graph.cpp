#include <gtest/gtest.h>

#include "support.hpp"

using namespace ggc;
using namespace ggc::test;

namespace {

Graph star(const std::string &center, const std::vector<std::string> &leaves) {
    std::vector<std::string> vs{center};
    std::vector<std::pair<std::string, std::string>> es;
    for (const auto &l : leaves) {
        vs.push_back(l);
        es.emplace_back(center, l);
    }
    return Graph(vs, es);
}

const Graph triangle() { return Graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}); }

} // namespace

TEST(Graph, CanonicalOrderAndKeys) {
    const Graph g({"c", "a", "b"}, {{"c", "b"}, {"b", "a"}});
    EXPECT_EQ(g.vertex(0), "a");
    EXPECT_EQ(g.edge(0).key(), "a#b");
    EXPECT_EQ(g.edge(1).key(), "b#c");
    EXPECT_EQ(g.endpoint(1, 0), g.vertex_index("b"));
}

TEST(Graph, RejectsMalformed) {
    EXPECT_THROW(Graph({"a", "a"}, {}), InvalidInput);
    EXPECT_THROW(Graph({"a"}, {{"a", "a"}}), InvalidInput);
    EXPECT_THROW(Graph({"a", "b"}, {{"a", "c"}}), InvalidInput);
    EXPECT_THROW(Graph({"a", "b"}, {{"a", "b"}, {"b", "a"}}), InvalidInput);
    EXPECT_THROW(Graph({"a#b"}, {}), InvalidInput);
}

TEST(Graph, TreeRecognition) {
    EXPECT_TRUE(is_tree(Graph({"a"}, {})));
    EXPECT_FALSE(is_tree(triangle()));
    EXPECT_TRUE(is_tree(path_graph({"a", "b", "c"})));
    EXPECT_FALSE(is_tree(Graph({"a", "b"}, {})));
    EXPECT_FALSE(is_tree(Graph()));
}

TEST(Graph, GeodesicOnPath) {
    const auto t = path_graph({"a", "b", "c"});
    const auto g = geodesic_to_subtree(t, {"a"}, "c");
    EXPECT_EQ(g.elements(t), (std::vector<std::string>{"c", "b#c", "b", "a#b", "a"}));
}

TEST(Graph, GeodesicFromInsideIsOneElement) {
    const auto t = path_graph({"a", "b", "c", "d"});
    EXPECT_EQ(geodesic_to_subtree(t, {"b", "c"}, "c").elements(t), (std::vector<std::string>{"c"}));
}

TEST(Graph, GeodesicOnStar) {
    const auto t = star("s", {"x", "y", "z"});
    EXPECT_EQ(geodesic_to_subtree(t, {"x"}, "y").elements(t),
              (std::vector<std::string>{"y", "s#y", "s", "s#x", "x"}));
}

TEST(Graph, GeodesicRejectsNonTree) { EXPECT_THROW(geodesic_to_subtree(triangle(), {"a"}, "b"), InvalidInput); }

TEST(Graph, PrecedesExamples) {
    const auto t = path_graph({"a", "b", "c", "d"});
    EXPECT_TRUE(precedes(t, {"a"}, "a", "d"));
    EXPECT_TRUE(precedes(t, {"a"}, "c", "c"));
    EXPECT_TRUE(precedes(t, {"a"}, "b", "d"));
    EXPECT_FALSE(precedes(t, {"a"}, "d", "b"));
}

TEST(Graph, ContractPathTail) {
    const auto t = path_graph({"a", "b", "c"});
    const auto c = contract(t, {"b", "c"});
    EXPECT_EQ(c.fresh_vertex, "b+c");
    EXPECT_EQ(c.tree.vertex_count(), 2u);
    ASSERT_EQ(c.tree.edge_count(), 1u);
    EXPECT_EQ(c.tree.edge(0).key(), "a#b+c");
}

TEST(Graph, ContractEverything) {
    const auto t = path_graph({"a", "b", "c"});
    const auto c = contract(t, {"a", "b", "c"});
    EXPECT_EQ(c.tree.vertex_count(), 1u);
    EXPECT_EQ(c.tree.edge_count(), 0u);
}

TEST(Graph, ContractStarCenterAndLeaf) {
    const auto c = contract(star("s", {"x", "y"}), {"s", "x"});
    ASSERT_EQ(c.tree.edge_count(), 1u);
    EXPECT_TRUE(c.tree.has_edge("s+x", "y"));
}

TEST(Graph, ContractRejectsNonSubtree) {
    EXPECT_THROW(contract(path_graph({"a", "b", "c"}), {"a", "c"}), InvalidInput);
    EXPECT_THROW(contract(path_graph({"a", "b"}), {}), InvalidInput);
}

TEST(Graph, FirstHomologyRank) {
    EXPECT_EQ(first_homology_rank(path_graph({"a", "b", "c"})), 0u);
    EXPECT_EQ(first_homology_rank(triangle()), 1u);
    const Graph two({"a", "b", "c", "x", "y", "z"},
                    {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"x", "y"}, {"y", "z"}, {"x", "z"}});
    EXPECT_EQ(first_homology_rank(two), 2u);
}

TEST(Graph, ConnectedComponents) {
    EXPECT_EQ(connected_components(triangle()).size(), 1u);
    EXPECT_EQ(connected_components(Graph({"a", "b", "c", "d"}, {})).size(), 4u);
    const Graph g({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}});
    const auto cs = connected_components(g);
    ASSERT_EQ(cs.size(), 2u);
    EXPECT_EQ(cs[0].vertices.size(), 3u);
    EXPECT_EQ(cs[0].edges.size(), 2u);
    EXPECT_EQ(cs[1].vertices, std::vector<std::size_t>{g.vertex_index("d")});
}

TEST(Graph, MorphismCompositionChecksShapes) {
    const auto t = path_graph({"a", "b", "c"});
    const auto c1 = contract(t, {"a", "b"});
    EXPECT_THROW(c1.morphism.after(c1.morphism), InvalidInput);
    const auto c2 = contract(c1.tree, {"a+b", "c"});
    const auto both = c2.morphism.after(c1.morphism);
    EXPECT_EQ(both.source(), t);
    EXPECT_EQ(both.target().vertex_count(), 1u);
}

// ---------------------------------------------------------------------------
// Properties over random trees

class GraphProperty : public ::testing::TestWithParam<int> {
  protected:
    Rng rng{static_cast<std::uint64_t>(GetParam())};
};

TEST_P(GraphProperty, PrecedesIsPartialOrder) {
    const auto t = gen::random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 9)));
    const auto r = gen::random_subtree(rng, t, 3);
    const auto &vs = t.vertices();
    for (const auto &v : vs) {
        EXPECT_TRUE(precedes(t, r, v, v));
        for (const auto &w : vs) {
            if (v != w && precedes(t, r, v, w))
                EXPECT_FALSE(precedes(t, r, w, v)) << v << " " << w;
            for (const auto &x : vs)
                if (precedes(t, r, v, w) && precedes(t, r, w, x))
                    EXPECT_TRUE(precedes(t, r, v, x)) << v << " " << w << " " << x;
        }
    }
}

TEST_P(GraphProperty, ContractionKeepsTreeAndCountsEdges) {
    const auto t = gen::random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 10)));
    const auto sub = gen::random_subtree(rng, t, 4);
    const auto c = contract(t, sub);
    EXPECT_TRUE(is_tree(c.tree));
    EXPECT_EQ(c.tree.edge_count(), t.edge_count() - induced_subgraph(t, sub).edge_count());
    EXPECT_EQ(first_homology_rank(c.tree), 0u);
}

TEST_P(GraphProperty, IteratedContractionEqualsOneShot) {
    const auto t = gen::random_tree(rng, static_cast<std::size_t>(rng.uniform(2, 10)));
    const auto inner = gen::random_subtree(rng, t, 3);
    const auto c1 = contract(t, inner);
    // grow the contracted vertex by some of its neighbours
    VertexSet outer_in_c1{c1.fresh_vertex};
    const auto fv = c1.tree.vertex_index(c1.fresh_vertex);
    for (auto e : c1.tree.incident(fv))
        if (rng.chance(1, 2))
            outer_in_c1.insert(c1.tree.vertex(c1.tree.other_end(e, fv)));
    const auto c2 = contract(c1.tree, outer_in_c1);
    VertexSet outer(inner);
    for (const auto &v : outer_in_c1)
        if (v != c1.fresh_vertex)
            outer.insert(v);
    const auto one = contract(t, outer);
    EXPECT_EQ(c2.tree, one.tree);
    EXPECT_EQ(c2.morphism.after(c1.morphism).vertex_images(), one.morphism.vertex_images());
}

TEST_P(GraphProperty, TreesHaveRankZero) {
    const auto t = gen::random_tree(rng, static_cast<std::size_t>(rng.uniform(1, 12)));
    EXPECT_TRUE(is_tree(t));
    EXPECT_EQ(first_homology_rank(t), 0u);
}

TEST_P(GraphProperty, RankCountsIndependentCycles) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 8));
    const auto extra = static_cast<std::size_t>(rng.uniform(0, 3));
    const auto g = gen::random_connected_graph(rng, n, extra);
    EXPECT_TRUE(is_connected(g));
    EXPECT_EQ(first_homology_rank(g), g.edge_count() - g.vertex_count() + 1);
}

INSTANTIATE_TEST_SUITE_P(Seeds, GraphProperty, ::testing::Range(0, 60));
