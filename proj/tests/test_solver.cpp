#include <gtest/gtest.h>

#include "mskt/generate.hpp"
#include "mskt/oracle.hpp"
#include "mskt/solver.hpp"
#include "support.hpp"

using namespace mskt;

namespace {

SolveResult checked_solve(const UndirectedGraph& g, const BackboneTree& h, int k, const ScoreOracle& f,
                          SolveOptions options = {}) {
    auto r = solve_retaining_mskt(g, h, k, f, options);
    EXPECT_EQ(test::solution_problem(r, g, h, k, f), "");
    return r;
}

UndirectedGraph random_graph(int n, double p, Rng& rng) {
    std::vector<Edge> edges;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
            if (rng.uniform() < p) edges.push_back({a, b});
        }
    }
    return UndirectedGraph(n, edges);
}

} // namespace

TEST(ScoreKTree, HandBuiltTwoTree) {
    const auto t = make_ktree(5, 2, {{0, {}}, {1, {0}}, {2, {0, 1}}, {3, {1, 2}}, {4, {2, 3}}});
    const TableScoreOracle f(2, {{Clique{0, 1, 2}, 5.0}}, {{PivotKey{3, Clique{1, 2}}, 7.0}, {PivotKey{4, Clique{2, 3}}, 11.0}});
    const auto h = BackboneTree::path(5);
    EXPECT_EQ(score_ktree(t, h, f), 23.0);
    const TableScoreOracle missing(2, {{Clique{0, 1, 2}, 5.0}}, {{PivotKey{3, Clique{1, 2}}, 7.0}});
    EXPECT_FALSE(score_ktree(t, h, missing).has_value());
    EXPECT_THROW(score_ktree(t, BackboneTree(5, {{0, 1}, {1, 2}, {2, 3}, {0, 4}}, 2), f), NotRetaining);
}

TEST(ScoreKTree, IndependentDataScoresZero) {
    std::vector<std::vector<int>> rows;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) rows.push_back({a, b, c});
        }
    }
    const SampleMatrix s({2, 2, 2}, rows);
    const auto g = UndirectedGraph::complete(3);
    const MiScoreOracle<SampleMatrix> f(s, g);
    const auto r = checked_solve(g, BackboneTree::path(3), 1, f);
    EXPECT_NEAR(r.score, 0.0, 1e-12);
}

TEST(Solver, OneTreeIsTheBackbone) {
    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.between(2, 9);
        const auto g = UndirectedGraph::complete(n);
        const auto h = random_backbone(n, 3, rng);
        const auto f = test::random_integer_scores(g, 1, rng);
        const auto r = checked_solve(g, h, 1, f);
        EXPECT_EQ(r.ktree.edges, h.edges());
    }
}

TEST(Solver, SingleCliqueScoresItsRoot) {
    const auto g = UndirectedGraph::complete(3);
    Rng rng(2);
    const auto f = test::random_integer_scores(g, 2, rng);
    const auto r = checked_solve(g, BackboneTree::path(3), 2, f);
    EXPECT_EQ(r.score, *f.root_score(Clique{0, 1, 2}));
    EXPECT_EQ(r.decomposition.size(), 1u);
}

TEST(Solver, DegenerateKEqualsN) {
    const auto g = UndirectedGraph::complete(3);
    Rng rng(3);
    const auto f = test::random_integer_scores(g, 2, rng);
    const auto r = checked_solve(g, BackboneTree::path(3), 3, f);
    EXPECT_EQ(r.ktree.edges.size(), 3u);
    EXPECT_EQ(r.score, 0.0);
}

TEST(Solver, PathBackboneSixVerticesMatchesExhaustiveSearch) {
    const auto g = UndirectedGraph::complete(6);
    const auto h = BackboneTree::path(6);
    const auto report = enumerate_retaining_ktrees(g, h, 2);
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = test::random_integer_scores(g, 2, rng);
        const auto r = checked_solve(g, h, 2, f);
        const auto [best, best_score] = brute_max_score(report, h, f);
        EXPECT_EQ(r.score, best_score);
        // The solver's edge set must be among the maximisers; when the maximiser is unique it
        // must be exactly the oracle's choice.
        std::size_t maximisers = 0;
        bool solver_is_maximiser = false;
        for (const auto& t : report.instances) {
            double top = -1.0;
            for (const auto& root : enumerate_cliques(UndirectedGraph(6, t.edges), 3)) {
                top = std::max(top, *score_ktree(ktree_from_edges(6, 2, t.edges, root), h, f));
            }
            if (top == best_score) {
                ++maximisers;
                solver_is_maximiser = solver_is_maximiser || t.edges == r.ktree.edges;
            }
        }
        EXPECT_TRUE(solver_is_maximiser);
        if (maximisers == 1) {
            EXPECT_EQ(r.ktree.edges, best.edges);
        }
    }
}

TEST(Solver, RandomInstancesMatchExhaustiveSearch) {
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const int k = rng.between(1, 3);
        const int n = rng.between(k + 1, 7);
        const auto g = rng.below(3) == 0 ? random_graph(n, 0.8, rng) : UndirectedGraph::complete(n);
        const auto h = random_backbone(n, 3, rng);
        const auto f = test::random_integer_scores(g, k, rng);
        if (!validate_backbone(g, h).ok()) {
            EXPECT_THROW(solve_retaining_mskt(g, h, k, f), InvalidInput);
            continue;
        }
        const auto report = enumerate_retaining_ktrees(g, h, k);
        if (report.instances.empty()) {
            EXPECT_THROW(solve_retaining_mskt(g, h, k, f), Infeasible);
            continue;
        }
        const auto r = checked_solve(g, h, k, f);
        EXPECT_EQ(r.score, brute_max_score(report, h, f).second) << "n=" << n << " k=" << k;
        EXPECT_EQ(r.score, brute_max_sequence_score(g, h, k, f));
    }
}

TEST(Solver, MemoisationDoesNotChangeTheAnswer) {
    Rng rng(6);
    for (int trial = 0; trial < 15; ++trial) {
        const int k = rng.between(1, 3);
        const int n = rng.between(k + 2, 8);
        const auto g = UndirectedGraph::complete(n);
        const auto h = random_backbone(n, 3, rng);
        const auto f = test::random_integer_scores(g, k, rng);
        const auto a = checked_solve(g, h, k, f);
        const auto b = checked_solve(g, h, k, f, SolveOptions{1, false});
        EXPECT_EQ(a.score, b.score);
        EXPECT_EQ(a.ktree.edges, b.ktree.edges);
    }
}

TEST(Solver, ThreadCountDoesNotChangeTheAnswer) {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = rng.between(6, 14);
        const int k = rng.between(1, 3);
        const auto g = UndirectedGraph::complete(n);
        const auto h = random_backbone(n, 3, rng);
        const RandomScoreOracle f(rng.next(), g);
        const auto a = checked_solve(g, h, k, f);
        for (int threads : {2, 3, 8}) {
            const auto b = checked_solve(g, h, k, f, SolveOptions{threads});
            EXPECT_EQ(a.score, b.score);
            EXPECT_EQ(a.ktree.edges, b.ktree.edges);
            EXPECT_EQ(a.ktree.creation_order, b.ktree.creation_order);
        }
    }
}

TEST(Solver, InfeasibleWhenBackboneEdgeHasNoClique) {
    // Path 0-1-2-3 inside a 4-cycle: no triangles at all.
    const UndirectedGraph g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    const TableScoreOracle f(2, {}, {});
    EXPECT_THROW(solve_retaining_mskt(g, BackboneTree::path(4), 2, f), Infeasible);
}

TEST(Solver, InfeasibleWhenEverythingIsForbidden) {
    const auto g = UndirectedGraph::complete(5);
    const TableScoreOracle f(2, {}, {});
    EXPECT_THROW(solve_retaining_mskt(g, BackboneTree::path(5), 2, f), Infeasible);
}

TEST(Solver, RejectsBadArguments) {
    const auto g = UndirectedGraph::complete(4);
    const TableScoreOracle f(1, {}, {});
    EXPECT_THROW(solve_retaining_mskt(g, BackboneTree::path(4), 0, f), InvalidInput);
    EXPECT_THROW(solve_retaining_mskt(g, BackboneTree::path(4), 5, f), InvalidInput);
    EXPECT_THROW(solve_retaining_mskt(g, BackboneTree::path(3), 1, f), InvalidInput);
}

TEST(Solver, ForbiddenScoresAreAvoided) {
    // Forbid every clique containing both 0 and 5; the optimum must avoid the edge (0,5).
    const auto g = UndirectedGraph::complete(6);
    Rng rng(8);
    const auto full = test::random_integer_scores(g, 2, rng);
    std::map<Clique, double> roots;
    std::map<PivotKey, double> pivots;
    for (const auto& [c, s] : full.roots()) {
        if (!(c.contains(0) && c.contains(5))) roots[c] = s;
    }
    for (const auto& [key, s] : full.pivots()) {
        if (!(key.base.with(key.pivot).contains(0) && key.base.with(key.pivot).contains(5))) pivots[key] = s;
    }
    const TableScoreOracle f(2, roots, pivots);
    const auto r = checked_solve(g, BackboneTree::path(6), 2, f);
    EXPECT_FALSE(r.ktree.has_edge(0, 5));
}

TEST(ChowLiu, TwoVariables) {
    const auto t = chow_liu(JointTable({0, 1}, {2, 2}, {0.4, 0.1, 0.1, 0.4}));
    EXPECT_EQ(t.edges, (std::vector<Edge>{{0, 1}}));
}

TEST(ChowLiu, PicksTheOnlyDependentPair) {
    // X1 = X0, X2 independent.
    const JointTable p({0, 1, 2}, {2, 2, 2}, {0.25, 0.25, 0.0, 0.0, 0.0, 0.0, 0.25, 0.25});
    EXPECT_TRUE(chow_liu(p).has_edge(0, 1));
}

TEST(ChowLiu, RecoversChainFromSamples) {
    const auto chain = ktree_from_edges(4, 1, BackboneTree::path(4).edges(), Clique{0, 1});
    Rng rng(9);
    TableStyle style;
    style.strong = true;
    const auto tables = random_tables(chain, style, rng);
    const auto s = sample_markov_ktree(chain, tables, 100000, 10);
    EXPECT_EQ(chow_liu(s).edges, chain.edges);
}

TEST(ChowLiu, MatchesOneTreeSolverOnStar) {
    // Chow-Liu is the unconstrained k = 1 problem: on a star backbone both must agree when
    // the star is also the maximum MI tree.
    const auto star = make_ktree(4, 1, {{0, {}}, {1, {0}}, {2, {0}}, {3, {0}}});
    Rng rng(10);
    TableStyle style;
    style.strong = true;
    const auto p = markov_ktree_joint(star, random_tables(star, style, rng));
    EXPECT_EQ(chow_liu(p).edges, star.edges);
}
