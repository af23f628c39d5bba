#include <gtest/gtest.h>

#include "mskt/graph.hpp"
#include "mskt/oracle.hpp"
#include "mskt/random.hpp"
#include "support.hpp"

using namespace mskt;

namespace {

UndirectedGraph cycle(int n) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) edges.push_back(make_edge(v, (v + 1) % n));
    return UndirectedGraph(n, edges);
}

BackboneTree star(int n, Vertex center, int d) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) {
        if (v != center) edges.push_back({center, v});
    }
    return BackboneTree(n, edges, d);
}

// K4 minus (0,3): root {0,1,2}, then 3 joins {1,2}.
KTree k4_minus_edge() {
    return make_ktree(4, 2, {{0, {}}, {1, {0}}, {2, {0, 1}}, {3, {1, 2}}});
}

} // namespace

TEST(Graph, RejectsMalformedInput) {
    EXPECT_THROW(UndirectedGraph(3, {{0, 0}}), InvalidInput);
    EXPECT_THROW(UndirectedGraph(3, {{0, 3}}), InvalidInput);
    EXPECT_THROW(UndirectedGraph(3, {{0, 1}, {1, 0}}), InvalidInput);
    EXPECT_THROW(UndirectedGraph(3, {{0, 1}}, {{Edge{1, 2}, 1.0}}), InvalidInput);
    EXPECT_THROW(Clique({1, 1}), InvalidInput);
}

TEST(Graph, CompleteGraphAndCliques) {
    const auto g = UndirectedGraph::complete(5);
    EXPECT_EQ(g.edges().size(), 10u);
    EXPECT_EQ(enumerate_cliques(g, 3).size(), 10u);
    const auto c5 = cycle(5);
    EXPECT_TRUE(enumerate_cliques(c5, 3).empty());
    EXPECT_EQ(enumerate_cliques(c5, 2).size(), 5u);
    const auto cl = enumerate_cliques(g, 2);
    EXPECT_TRUE(std::is_sorted(cl.begin(), cl.end()));
}

TEST(Backbone, PathInCompleteGraphIsValid) {
    EXPECT_TRUE(validate_backbone(UndirectedGraph::complete(5), BackboneTree::path(5)).ok());
}

TEST(Backbone, StarExceedsDegreeBound) {
    const auto r = validate_backbone(UndirectedGraph::complete(4), star(4, 0, 2));
    ASSERT_FALSE(r.ok());
    EXPECT_NE(r.violation->find("degree 3 > 2"), std::string::npos) << *r.violation;
}

TEST(Backbone, PathInsideCycleIsValid) {
    EXPECT_TRUE(validate_backbone(cycle(4), BackboneTree::path(4)).ok());
}

TEST(Backbone, ReportsFirstViolation) {
    const auto k4 = UndirectedGraph::complete(4);
    EXPECT_FALSE(validate_backbone(k4, BackboneTree(4, {{0, 1}, {1, 2}}, 2)).ok());
    EXPECT_FALSE(validate_backbone(k4, BackboneTree(4, {{0, 1}, {1, 0}, {2, 3}}, 2)).ok());
    EXPECT_FALSE(validate_backbone(k4, BackboneTree(4, {{0, 1}, {0, 0}, {2, 3}}, 2)).ok());
    EXPECT_FALSE(validate_backbone(UndirectedGraph(4, {{0, 1}, {1, 2}}), BackboneTree::path(4)).ok());
    EXPECT_FALSE(validate_backbone(UndirectedGraph::complete(5), BackboneTree::path(4)).ok());
    // cycle plus isolated vertex: right edge count, not connected
    EXPECT_FALSE(validate_backbone(k4, BackboneTree(4, {{0, 1}, {1, 2}, {0, 2}}, 2)).ok());
}

TEST(Backbone, RandomBackbonesRespectBound) {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.between(1, 12);
        const int d = rng.between(2, 4);
        const auto h = random_backbone(n, d, rng);
        EXPECT_TRUE(validate_backbone(UndirectedGraph::complete(n), h).ok());
        EXPECT_LE(h.max_degree(), d);
    }
}

TEST(KTree, TriangleIsATwoTree) {
    const auto t = make_ktree(3, 2, {{0, {}}, {1, {0}}, {2, {0, 1}}});
    EXPECT_TRUE(validate_ktree(t).ok());
    EXPECT_EQ(t.edges.size(), 3u);
}

TEST(KTree, K4MinusEdgeIsATwoTree) {
    const auto t = k4_minus_edge();
    EXPECT_TRUE(validate_ktree(t).ok());
    EXPECT_FALSE(t.has_edge(0, 3));
    EXPECT_EQ(t.edges.size(), 5u);
}

TEST(KTree, CycleIsNotATwoTree) {
    KTree t = k4_minus_edge();
    t.n = 5;
    t.creation_order.push_back({4, {2, 3}});
    t.edges = cycle(5).edges();
    EXPECT_FALSE(validate_ktree(t).ok());
    EXPECT_THROW(ktree_from_edges(5, 2, cycle(5).edges(), Clique{0, 1, 2}), InvalidInput);
}

TEST(KTree, ReplayRejectsBrokenSteps) {
    EXPECT_THROW(make_ktree(4, 2, {{0, {}}, {1, {0}}, {2, {0, 1}}, {3, {0, 3}}}), InvalidInput);
    EXPECT_THROW(make_ktree(4, 2, {{0, {}}, {1, {0}}, {2, {0, 1}}, {2, {0, 1}}}), InvalidInput);
    EXPECT_THROW(make_ktree(4, 2, {{0, {}}, {1, {0}}, {2, {0, 1}}}), InvalidInput);
    EXPECT_THROW(make_ktree(4, 2, {{0, {}}, {1, {0}}, {2, {0}}, {3, {1, 2}}}), InvalidInput);
}

TEST(KTree, FromEdgesRecoversOrder) {
    const auto t = k4_minus_edge();
    const auto u = ktree_from_edges(4, 2, t.edges, Clique{1, 2, 3});
    EXPECT_TRUE(validate_ktree(u).ok());
    EXPECT_EQ(u.edges, t.edges);
    EXPECT_EQ(u.root_clique, (Clique{1, 2, 3}));
}

TEST(Decomposition, SingleClique) {
    const auto t = make_ktree(3, 2, {{0, {}}, {1, {0}}, {2, {0, 1}}});
    const auto td = build_tree_decomposition(t);
    ASSERT_EQ(td.size(), 1u);
    EXPECT_EQ(td.parent[0], -1);
    EXPECT_TRUE(check_decomposition(td, 3, 2).ok());
}

TEST(Decomposition, K4MinusEdge) {
    const auto td = build_tree_decomposition(k4_minus_edge());
    ASSERT_EQ(td.size(), 2u);
    EXPECT_EQ(td.nodes[0], (Clique{0, 1, 2}));
    EXPECT_EQ(td.nodes[1], (Clique{1, 2, 3}));
    EXPECT_EQ(td.parent[1], 0);
    EXPECT_EQ(td.pivot[1], 3);
}

TEST(Decomposition, PathIsAChain) {
    const auto t = ktree_from_edges(4, 1, BackboneTree::path(4).edges(), Clique{0, 1});
    const auto td = build_tree_decomposition(t);
    ASSERT_EQ(td.size(), 3u);
    EXPECT_EQ(td.parent[1], 0);
    EXPECT_EQ(td.parent[2], 1);
    EXPECT_TRUE(check_decomposition(td, 4, 1).ok());
}

TEST(Decomposition, CheckCatchesBrokenTrees) {
    auto td = build_tree_decomposition(k4_minus_edge());
    auto bad = td;
    bad.pivot[1] = 0;
    EXPECT_FALSE(check_decomposition(bad, 4, 2).ok());
    bad = td;
    bad.nodes[1] = Clique{0, 1, 2};
    EXPECT_FALSE(check_decomposition(bad, 4, 2).ok());
    bad = td;
    bad.parent[1] = 1;
    EXPECT_FALSE(check_decomposition(bad, 4, 2).ok());
    bad = td;
    bad.nodes.pop_back();
    EXPECT_FALSE(check_decomposition(bad, 4, 2).ok());
}

TEST(Precursor, NestedInitialClique) {
    const auto pre = derive_precursor(make_ktree(3, 2, {{0, {}}, {1, {0}}, {2, {0, 1}}}));
    EXPECT_TRUE(pre[0].empty());
    EXPECT_EQ(pre[1], (std::vector<Vertex>{0}));
    EXPECT_EQ(pre[2], (std::vector<Vertex>{0, 1}));
}

TEST(Precursor, CreationClique) {
    EXPECT_EQ(derive_precursor(k4_minus_edge())[3], (std::vector<Vertex>{1, 2}));
}

TEST(Precursor, PathOneTree) {
    const auto pre = derive_precursor(ktree_from_edges(3, 1, BackboneTree::path(3).edges(), Clique{0, 1}));
    EXPECT_TRUE(pre[0].empty());
    EXPECT_EQ(pre[1], (std::vector<Vertex>{0}));
    EXPECT_EQ(pre[2], (std::vector<Vertex>{1}));
}

// Every enumerated k-tree has (k+1)-clique count n-k, kn - k(k+1)/2 edges, a valid
// decomposition under every choice of root, and the expected precursor shape.
TEST(KTreeProperties, EnumeratedTreesAreConsistent) {
    for (int n = 2; n <= 6; ++n) {
        for (int k = 1; k < n && k <= 3; ++k) {
            const auto report = enumerate_spanning_ktrees(UndirectedGraph::complete(n), k);
            for (const auto& t : report.instances) {
                ASSERT_TRUE(validate_ktree(t).ok());
                EXPECT_EQ(static_cast<int>(t.edges.size()), k * n - k * (k + 1) / 2);
                EXPECT_EQ(static_cast<int>(test::clique_count(t)), n - k);
                for (const auto& root : enumerate_cliques(UndirectedGraph(n, t.edges), k + 1)) {
                    const auto r = ktree_from_edges(n, k, t.edges, root);
                    ASSERT_TRUE(check_decomposition(build_tree_decomposition(r), n, k).ok());
                    const auto pre = derive_precursor(r);
                    for (std::size_t j = 0; j < r.creation_order.size(); ++j) {
                        const auto& step = r.creation_order[j];
                        EXPECT_EQ(pre[step.vertex].size(), std::min<std::size_t>(j, static_cast<std::size_t>(k)));
                    }
                }
            }
        }
    }
}
