#pragma once

// Brute-force ground truth for small instances. Nothing here is fast; everything here is
// exhaustive.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mskt/errors.hpp"
#include "mskt/graph.hpp"
#include "mskt/info.hpp"
#include "mskt/score.hpp"
#include "mskt/solver.hpp"

namespace mskt {

inline constexpr int kOracleMaxVertices = 9;
inline constexpr int kOracleMaxK = 3;

struct EnumerationReport {
    std::vector<KTree> instances;  // one per distinct edge set, sorted by edge list
};

namespace detail {

struct GrowthState {
    std::uint32_t vertices = 0;
    std::uint64_t edges = 0;

    friend bool operator==(const GrowthState&, const GrowthState&) = default;
};

struct GrowthStateHash {
    std::size_t operator()(const GrowthState& s) const noexcept {
        return static_cast<std::size_t>(mix64(s.edges ^ mix64(s.vertices)));
    }
};

// Grows every k-tree of g vertex by vertex from each (k+1)-clique. When a backbone is given,
// a new vertex may only join a k-clique containing all of its already-placed backbone
// neighbours, since an edge between two existing vertices can never be added later.
// Each partial tree keeps the best score over all sequences reaching it; later steps depend
// only on the partial tree, so the final layer holds the best score per creation history.
class KTreeGrower {
public:
    KTreeGrower(const UndirectedGraph& g, const BackboneTree* h, int k) : g_(g), h_(h), k_(k), n_(g.n()) {
        if (n_ > kOracleMaxVertices || k_ > kOracleMaxK) {
            throw InstanceTooLarge("brute-force enumeration is limited to n <= " + std::to_string(kOracleMaxVertices) +
                                   " and k <= " + std::to_string(kOracleMaxK));
        }
        if (k_ < 1 || k_ > n_) throw InvalidInput("need 1 <= k <= n");
        int idx = 0;
        edge_bit_.assign(static_cast<std::size_t>(n_ * n_), -1);
        for (Vertex a = 0; a < n_; ++a) {
            for (Vertex b = a + 1; b < n_; ++b) {
                edge_bit_[a * n_ + b] = edge_bit_[b * n_ + a] = idx++;
            }
        }
    }

    struct Link {
        GrowthState from;
        Vertex pivot = -1;
        std::vector<Vertex> base;
        Score score;
    };

    template <class Scorer>
    std::vector<std::pair<GrowthState, KTree>> run(const Scorer& scorer, std::vector<Score>* final_scores) {
        std::vector<std::unordered_map<GrowthState, Link, GrowthStateHash>> layers(static_cast<std::size_t>(n_ + 1));
        std::vector<std::pair<GrowthState, KTree>> out;
        if (n_ == k_) {
            std::vector<Vertex> all(static_cast<std::size_t>(n_));
            for (Vertex v = 0; v < n_; ++v) all[v] = v;
            if (g_.is_clique(all)) {
                out.emplace_back(GrowthState{}, make_ktree(n_, k_, detail::nested_root_steps(Clique(all))));
                if (final_scores) final_scores->push_back(0.0);
            }
            return out;
        }
        for (const auto& root : enumerate_cliques(g_, k_ + 1)) {
            GrowthState s;
            for (Vertex v : root) s.vertices |= 1u << v;
            for (std::size_t i = 0; i < root.size(); ++i) {
                for (std::size_t j = i + 1; j < root.size(); ++j) s.edges |= bit(root[i], root[j]);
            }
            layers[k_ + 1].emplace(s, Link{GrowthState{}, -1, root.vec(), scorer.root(root)});
        }
        for (int size = k_ + 1; size < n_; ++size) {
            auto keys = sorted_keys(layers[size]);
            for (const auto& s : keys) {
                const Link& here = layers[size].at(s);
                std::vector<Vertex> placed;
                for (Vertex v = 0; v < n_; ++v) {
                    if ((s.vertices >> v) & 1) placed.push_back(v);
                }
                for (const auto& base : k_subsets(placed, s.edges)) {
                    for (Vertex w = 0; w < n_; ++w) {
                        if ((s.vertices >> w) & 1) continue;
                        if (!g_.is_clique(Clique(base).with(w).members())) continue;
                        if (h_ && !retains(w, s.vertices, base)) continue;
                        GrowthState next{s.vertices | (1u << w), s.edges};
                        for (Vertex b : base) next.edges |= bit(w, b);
                        const Score sc = here.score + scorer.step(w, base);
                        auto [it, inserted] = layers[size + 1].try_emplace(next, Link{s, w, base, sc});
                        if (!inserted && better(sc, it->second.score)) it->second = Link{s, w, base, sc};
                    }
                }
            }
        }
        for (const auto& s : sorted_keys(layers[n_])) {
            out.emplace_back(s, rebuild(layers, s));
            if (final_scores) final_scores->push_back(layers[n_].at(s).score);
        }
        return out;
    }

private:
    std::uint64_t bit(Vertex a, Vertex b) const { return std::uint64_t{1} << edge_bit_[a * n_ + b]; }

    static bool better(const Score& a, const Score& b) {
        if (!a) return false;
        return !b || *a > *b;
    }

    bool retains(Vertex w, std::uint32_t placed, const std::vector<Vertex>& base) const {
        for (Vertex u : h_->neighbors(w)) {
            if (((placed >> u) & 1) && !std::binary_search(base.begin(), base.end(), u)) return false;
        }
        return true;
    }

    std::vector<std::vector<Vertex>> k_subsets(const std::vector<Vertex>& placed, std::uint64_t edges) const {
        std::vector<std::vector<Vertex>> out;
        std::vector<Vertex> cur;
        auto rec = [&](auto&& self, std::size_t from) -> void {
            if (static_cast<int>(cur.size()) == k_) {
                out.push_back(cur);
                return;
            }
            for (std::size_t i = from; i < placed.size(); ++i) {
                bool ok = true;
                for (Vertex c : cur) {
                    if (!(edges & bit(c, placed[i]))) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                cur.push_back(placed[i]);
                self(self, i + 1);
                cur.pop_back();
            }
        };
        rec(rec, 0);
        return out;
    }

    template <class Map>
    static std::vector<GrowthState> sorted_keys(const Map& m) {
        std::vector<GrowthState> keys;
        keys.reserve(m.size());
        for (const auto& [s, link] : m) keys.push_back(s);
        std::sort(keys.begin(), keys.end(), [](const GrowthState& a, const GrowthState& b) {
            return a.edges != b.edges ? a.edges < b.edges : a.vertices < b.vertices;
        });
        return keys;
    }

    template <class Layers>
    KTree rebuild(const Layers& layers, GrowthState s) const {
        std::vector<CreationStep> reversed;
        for (int size = n_; size > k_ + 1; --size) {
            const Link& link = layers[size].at(s);
            reversed.push_back({link.pivot, link.base});
            s = link.from;
        }
        std::vector<CreationStep> order = nested_root_steps(Clique(layers[k_ + 1].at(s).base));
        order.insert(order.end(), reversed.rbegin(), reversed.rend());
        return make_ktree(n_, k_, std::move(order));
    }

    const UndirectedGraph& g_;
    const BackboneTree* h_;
    int k_;
    int n_;
    std::vector<int> edge_bit_;
};

struct NoScore {
    Score root(const Clique&) const { return 0.0; }
    Score step(Vertex, const std::vector<Vertex>&) const { return 0.0; }
};

struct OracleScore {
    const ScoreOracle& f;
    Score root(const Clique& c) const { return f.root_score(c); }
    Score step(Vertex w, const std::vector<Vertex>& base) const { return f.score(w, Clique(base)); }
};

inline EnumerationReport enumerate(const UndirectedGraph& g, const BackboneTree* h, int k) {
    KTreeGrower grower(g, h, k);
    EnumerationReport report;
    for (auto& [state, tree] : grower.run(NoScore{}, nullptr)) report.instances.push_back(std::move(tree));
    std::sort(report.instances.begin(), report.instances.end(),
              [](const KTree& a, const KTree& b) { return a.edges < b.edges; });
    return report;
}

} // namespace detail

/// Every distinct spanning k-tree of g (by edge set) that contains all backbone edges.
inline EnumerationReport enumerate_retaining_ktrees(const UndirectedGraph& g, const BackboneTree& h, int k) {
    if (g.n() != h.n()) throw InvalidInput("backbone and graph disagree on the vertex count");
    return detail::enumerate(g, &h, k);
}

/// Every distinct spanning k-tree of g, no retention constraint.
inline EnumerationReport enumerate_spanning_ktrees(const UndirectedGraph& g, int k) {
    return detail::enumerate(g, nullptr, k);
}

/// Best score over all instances and all choices of root clique. Ties go to the
/// lexicographically smaller edge list, then the smaller root.
inline std::pair<KTree, double> brute_max_score(const EnumerationReport& report, const BackboneTree& h,
                                                const ScoreOracle& f) {
    std::optional<std::pair<KTree, double>> best;
    for (const auto& t : report.instances) {
        std::vector<Clique> roots;
        if (t.n == t.k) {
            roots.push_back(t.root_clique);
        } else {
            roots = enumerate_cliques(UndirectedGraph(t.n, t.edges), t.k + 1);
        }
        for (const auto& r : roots) {
            KTree rooted = t.n == t.k ? t : ktree_from_edges(t.n, t.k, t.edges, r);
            const Score s = score_ktree(rooted, h, f);
            if (!s) continue;
            if (!best || *s > best->second) best.emplace(std::move(rooted), *s);
        }
    }
    if (!best) throw Infeasible("no enumerated k-tree has a finite score");
    return *best;
}

/// Best score over every creation sequence (not just every edge set and root). Independent
/// cross-check of brute_max_score: equal whenever the rooted score is order-invariant.
inline double brute_max_sequence_score(const UndirectedGraph& g, const BackboneTree& h, int k, const ScoreOracle& f) {
    detail::KTreeGrower grower(g, &h, k);
    std::vector<Score> scores;
    grower.run(detail::OracleScore{f}, &scores);
    std::optional<double> best;
    for (const auto& s : scores) {
        if (s && (!best || *s > *best)) best = *s;
    }
    if (!best) throw Infeasible("no creation sequence has a finite score");
    return *best;
}

/// Retaining k-tree whose Markov distribution is closest to p in KL divergence.
inline std::pair<KTree, double> brute_min_kl(const JointTable& p, const UndirectedGraph& g, const BackboneTree& h, int k) {
    const auto report = enumerate_retaining_ktrees(g, h, k);
    std::optional<std::pair<KTree, double>> best;
    for (const auto& t : report.instances) {
        const double d = kl_divergence(p, markov_ktree_distribution(t, p));
        if (!best || d < best->second) best.emplace(t, d);
    }
    if (!best) throw Infeasible("no retaining k-tree exists");
    return *best;
}

inline constexpr int kCliqueOracleMaxVertices = 20;
inline constexpr int kCliqueOracleMaxK = 6;

/// True iff g has a clique on k vertices, by checking k-subsets.
inline bool max_clique_exists(const UndirectedGraph& g, int k) {
    if (g.n() > kCliqueOracleMaxVertices || k > kCliqueOracleMaxK) {
        throw InstanceTooLarge("clique search is limited to n <= 20 and k <= 6");
    }
    if (k <= 0) return true;
    if (k > g.n()) return false;
    std::vector<Vertex> cur;
    auto rec = [&](auto&& self, Vertex from) -> bool {
        if (static_cast<int>(cur.size()) == k) return true;
        for (Vertex v = from; v < g.n(); ++v) {
            if (!std::all_of(cur.begin(), cur.end(), [&](Vertex c) { return g.adjacent(c, v); })) continue;
            cur.push_back(v);
            if (self(self, v + 1)) return true;
            cur.pop_back();
        }
        return false;
    };
    return rec(rec, 0);
}

} // namespace mskt
