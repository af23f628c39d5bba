#pragma once

// Test helpers and independent reference computations. Nothing here calls the code under test
// to obtain an expected value.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "mskt/graph.hpp"
#include "mskt/info.hpp"
#include "mskt/random.hpp"
#include "mskt/score.hpp"
#include "mskt/solver.hpp"

namespace mskt::test {

/// Labeled k-trees on n vertices: C(n,k) (k(n-k)+1)^(n-k-2).
inline double labeled_ktree_count(int n, int k) {
    double binom = 1.0;
    for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
    return binom * std::pow(static_cast<double>(k * (n - k) + 1), n - k - 2);
}

/// Assignment-by-assignment walk over a joint table: (assignment, probability).
template <class Fn>
void for_each_cell(const JointTable& p, Fn&& fn) {
    std::vector<int> a(p.vars().size(), 0);
    for (std::size_t c = 0; c < p.size(); ++c) {
        fn(a, p.probs()[c]);
        for (std::size_t i = a.size(); i-- > 0;) {
            if (++a[i] < p.alphabets()[i]) break;
            a[i] = 0;
        }
    }
}

inline std::vector<int> project(const JointTable& p, const std::vector<int>& a, const std::vector<Vertex>& vars) {
    std::vector<int> out;
    for (Vertex v : vars) out.push_back(a[static_cast<std::size_t>(p.position(v))]);
    return out;
}

/// Sum over x, y of p(x,y) log2 p(x,y) / (p(x) p(y)), with marginals accumulated in maps.
inline double direct_mutual_information(const JointTable& p, Vertex x, const std::vector<Vertex>& ys) {
    if (ys.empty()) return 0.0;
    std::map<std::vector<int>, double> pxy;
    std::map<std::vector<int>, double> px;
    std::map<std::vector<int>, double> py;
    std::vector<Vertex> both{x};
    both.insert(both.end(), ys.begin(), ys.end());
    for_each_cell(p, [&](const std::vector<int>& a, double pr) {
        pxy[project(p, a, both)] += pr;
        px[project(p, a, {x})] += pr;
        py[project(p, a, ys)] += pr;
    });
    double sum = 0.0;
    for (const auto& [key, pr] : pxy) {
        if (pr <= 0.0) continue;
        const std::vector<int> kx(key.begin(), key.begin() + 1);
        const std::vector<int> ky(key.begin() + 1, key.end());
        sum += pr * std::log2(pr / (px[kx] * py[ky]));
    }
    return sum;
}

/// -sum p log2 p of the marginal on vars, accumulated in a map.
inline double direct_entropy(const JointTable& p, const std::vector<Vertex>& vars) {
    std::map<std::vector<int>, double> m;
    for_each_cell(p, [&](const std::vector<int>& a, double pr) { m[project(p, a, vars)] += pr; });
    double h = 0.0;
    for (const auto& [key, pr] : m) {
        if (pr > 0.0) h -= pr * std::log2(pr);
    }
    return h;
}

/// P_G(x) evaluated cell by cell as the product of p(x_v | x_parents) over creation steps.
inline double direct_markov_probability(const JointTable& p, const KTree& t, const std::vector<int>& a) {
    double prob = 1.0;
    for (const auto& step : t.creation_order) {
        std::vector<Vertex> family = step.precursors;
        family.push_back(step.vertex);
        double joint = 0.0;
        double context = 0.0;
        double single = 0.0;
        for_each_cell(p, [&](const std::vector<int>& b, double pr) {
            bool ctx = true;
            for (Vertex u : step.precursors) ctx = ctx && b[p.position(u)] == a[p.position(u)];
            const bool same = b[p.position(step.vertex)] == a[p.position(step.vertex)];
            if (ctx) context += pr;
            if (ctx && same) joint += pr;
            if (same) single += pr;
        });
        prob *= context > 0.0 ? joint / context : single;
    }
    return prob;
}

inline JointTable random_joint(int n, int alphabet, Rng& rng) {
    std::vector<Vertex> vars(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) vars[v] = v;
    std::size_t cells = 1;
    for (int i = 0; i < n; ++i) cells *= static_cast<std::size_t>(alphabet);
    auto probs = rng.dirichlet(static_cast<int>(cells), 1.0);
    return JointTable(vars, std::vector<int>(static_cast<std::size_t>(n), alphabet), probs);
}

/// Random integer scores in [0, 100] on every (k+1)-clique of g and every pivot choice.
inline TableScoreOracle random_integer_scores(const UndirectedGraph& g, int k, Rng& rng) {
    std::map<Clique, double> roots;
    std::map<PivotKey, double> pivots;
    for (const auto& c : enumerate_cliques(g, k + 1)) {
        roots[c] = static_cast<double>(rng.between(0, 100));
        for (Vertex w : c) pivots[PivotKey{w, c.without(w)}] = static_cast<double>(rng.between(0, 100));
    }
    return TableScoreOracle(k, std::move(roots), std::move(pivots));
}

inline bool contains_backbone(const KTree& t, const BackboneTree& h) {
    for (Edge e : h.edges()) {
        if (!t.has_edge(e.u, e.v)) return false;
    }
    return true;
}

/// Number of (k+1)-cliques of the k-tree's own graph.
inline std::size_t clique_count(const KTree& t) {
    return t.n == t.k ? 0 : enumerate_cliques(UndirectedGraph(t.n, t.edges), t.k + 1).size();
}

/// Empty when the result keeps the backbone, is a valid spanning k-tree of g with n-k
/// cliques and a consistent decomposition, and rescores to its reported score.
inline std::string solution_problem(const SolveResult& r, const UndirectedGraph& g, const BackboneTree& h, int k,
                                    const ScoreOracle& f) {
    const KTree& t = r.ktree;
    if (t.n != g.n() || t.k != k) return "wrong shape";
    if (auto v = validate_ktree(t); !v.ok()) return "invalid k-tree: " + *v.violation;
    if (!contains_backbone(t, h)) return "backbone edge missing";
    for (Edge e : t.edges) {
        if (!g.adjacent(e.u, e.v)) return "edge " + to_string(e) + " not in graph";
    }
    if (t.n > t.k) {
        if (clique_count(t) != static_cast<std::size_t>(t.n - t.k)) return "wrong clique count";
        if (r.decomposition.size() != static_cast<std::size_t>(t.n - t.k)) return "wrong decomposition size";
        if (auto v = check_decomposition(r.decomposition, t.n, t.k); !v.ok()) return "bad decomposition: " + *v.violation;
        if (r.cliques.size() != static_cast<std::size_t>(t.n - t.k - 1)) return "wrong clique list";
    }
    const Score s = score_ktree(t, h, f);
    if (!s || *s != r.score) return "rescoring differs";
    return {};
}

} // namespace mskt::test
