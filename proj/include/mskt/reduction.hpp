#pragma once

// k-Clique as a Hamiltonian-path-retaining maximum spanning (k-1)-tree instance.

#include <map>
#include <string>

#include "mskt/errors.hpp"
#include "mskt/graph.hpp"
#include "mskt/score.hpp"
#include "mskt/solver.hpp"

namespace mskt {

struct HMsktInstance {
    UndirectedGraph gprime;  // complete, weight 1 on edges of the source graph, 0 elsewhere
    BackboneTree h;          // path 0-1-...-(n-1)
    int kprime = 0;
    double sigma = 1.0;
};

inline HMsktInstance reduce_kclique(const UndirectedGraph& g, int k) {
    if (k < 2 || k > g.n()) throw InvalidInput("k-Clique reduction needs 2 <= k <= n");
    const int n = g.n();
    std::map<Edge, double> weights;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) weights[{a, b}] = g.adjacent(a, b) ? 1.0 : 0.0;
    }
    return HMsktInstance{UndirectedGraph::complete(n, std::move(weights)), BackboneTree::path(n), k - 1, 1.0};
}

/// Decides k-Clique through the solver: the best path-retaining (k-1)-tree under the
/// weight-product score reaches 1 iff some (k-1)-tree clique has only unit edges.
/// Needs k >= 3: a 1-tree retaining a Hamiltonian path is the path itself, so k = 2 would
/// only see edges between consecutive ids.
inline bool decide_kclique(const UndirectedGraph& g, int k, SolveOptions options = {}) {
    if (k < 3) throw InvalidInput("decide_kclique needs k >= 3; for k = 2 check for any edge");
    const HMsktInstance inst = reduce_kclique(g, k);
    const WeightProductOracle f(inst.gprime);
    const SolveResult r = solve_retaining_mskt(inst.gprime, inst.h, inst.kprime, f, options);
    return r.score >= inst.sigma;
}

} // namespace mskt
