#pragma once

// Graphs, backbones, k-trees and their rooted clique trees.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mskt/errors.hpp"

namespace mskt {

using Vertex = int;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Canonical (min, max) edge.
inline Edge make_edge(Vertex a, Vertex b) noexcept {
    return a < b ? Edge{a, b} : Edge{b, a};
}

inline std::string to_string(const Edge& e) {
    return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

/// Outcome of a structural check. Violations are data, not exceptions.
struct Report {
    std::optional<std::string> violation;

    bool ok() const noexcept { return !violation.has_value(); }
    static Report pass() { return {}; }
    static Report fail(std::string why) { return Report{std::move(why)}; }
};

/// Vertex set kept sorted ascending; two cliques compare equal iff their member sets do.
class Clique {
public:
    Clique() = default;
    Clique(std::initializer_list<Vertex> members) : Clique(std::vector<Vertex>(members)) {}
    explicit Clique(std::vector<Vertex> members) : members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
            throw InvalidInput("clique has repeated vertex");
        }
    }

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    std::span<const Vertex> members() const noexcept { return members_; }
    const std::vector<Vertex>& vec() const noexcept { return members_; }
    Vertex operator[](std::size_t i) const { return members_[i]; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    bool contains(Vertex v) const noexcept {
        return std::binary_search(members_.begin(), members_.end(), v);
    }

    Clique without(Vertex v) const {
        Clique out;
        out.members_.reserve(members_.size());
        for (Vertex m : members_) {
            if (m != v) out.members_.push_back(m);
        }
        return out;
    }

    Clique with(Vertex v) const {
        Clique out;
        out.members_.reserve(members_.size() + 1);
        auto at = std::lower_bound(members_.begin(), members_.end(), v);
        if (at != members_.end() && *at == v) throw InvalidInput("clique has repeated vertex");
        out.members_.insert(out.members_.end(), members_.begin(), at);
        out.members_.push_back(v);
        out.members_.insert(out.members_.end(), at, members_.end());
        return out;
    }

    friend auto operator<=>(const Clique&, const Clique&) = default;
    friend bool operator==(const Clique&, const Clique&) = default;

private:
    std::vector<Vertex> members_;
};

struct CliqueHash {
    std::size_t operator()(const Clique& c) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (Vertex v : c) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

inline std::string to_string(const Clique& c) {
    std::string s = "{";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    return s + "}";
}

/// Simple undirected graph on dense ids 0..n-1 with optional edge weights.
class UndirectedGraph {
public:
    UndirectedGraph() = default;

    explicit UndirectedGraph(int n, std::vector<Edge> edges = {}, std::map<Edge, double> weights = {})
        : n_(n), weights_(std::move(weights)) {
        if (n < 1) throw InvalidInput("graph needs at least one vertex");
        adj_.resize(static_cast<std::size_t>(n));
        matrix_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
        edges_.reserve(edges.size());
        for (Edge e : edges) {
            if (e.u == e.v) throw InvalidInput("self-loop at vertex " + std::to_string(e.u));
            if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
                throw InvalidInput("edge " + to_string(e) + " has endpoint outside [0," + std::to_string(n) + ")");
            }
            e = make_edge(e.u, e.v);
            auto& cell = matrix_[index(e.u, e.v)];
            if (cell) throw InvalidInput("duplicate edge " + to_string(e));
            cell = 1;
            matrix_[index(e.v, e.u)] = 1;
            edges_.push_back(e);
        }
        std::sort(edges_.begin(), edges_.end());
        for (Edge e : edges_) {
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
        }
        for (auto& list : adj_) std::sort(list.begin(), list.end());
        for (const auto& [e, w] : weights_) {
            if (e.u >= e.v || !adjacent(e.u, e.v)) {
                throw InvalidInput("weight given for non-edge " + to_string(e));
            }
        }
    }

    static UndirectedGraph complete(int n, std::map<Edge, double> weights = {}) {
        std::vector<Edge> edges;
        for (Vertex a = 0; a < n; ++a) {
            for (Vertex b = a + 1; b < n; ++b) edges.push_back({a, b});
        }
        return UndirectedGraph(n, std::move(edges), std::move(weights));
    }

    int n() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::map<Edge, double>& weights() const noexcept { return weights_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }

    bool adjacent(Vertex a, Vertex b) const noexcept {
        if (a < 0 || b < 0 || a >= n_ || b >= n_) return false;
        return matrix_[index(a, b)] != 0;
    }

    std::optional<double> weight(Vertex a, Vertex b) const {
        auto it = weights_.find(make_edge(a, b));
        if (it == weights_.end()) return std::nullopt;
        return it->second;
    }

    bool is_clique(std::span<const Vertex> vs) const noexcept {
        for (std::size_t i = 0; i < vs.size(); ++i) {
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                if (!adjacent(vs[i], vs[j])) return false;
            }
        }
        return true;
    }

private:
    std::size_t index(Vertex a, Vertex b) const noexcept {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b);
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::map<Edge, double> weights_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::uint8_t> matrix_;
};

/// The spanning tree that every solution must keep. Structure is checked by validate_backbone,
/// so a BackboneTree may hold a non-tree edge list.
class BackboneTree {
public:
    BackboneTree() = default;

    BackboneTree(int n, std::vector<Edge> edges, int degree_bound)
        : n_(n), degree_bound_(degree_bound) {
        if (n < 1) throw InvalidInput("backbone needs at least one vertex");
        adj_.resize(static_cast<std::size_t>(n));
        for (Edge e : edges) {
            if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
                throw InvalidInput("backbone edge " + to_string(e) + " has endpoint outside [0," +
                                   std::to_string(n) + ")");
            }
            edges_.push_back(make_edge(e.u, e.v));
        }
        std::sort(edges_.begin(), edges_.end());
        for (Edge e : edges_) {
            if (e.u == e.v) continue;
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
        }
        for (auto& list : adj_) std::sort(list.begin(), list.end());
    }

    /// Hamiltonian path 0-1-...-(n-1).
    static BackboneTree path(int n, int degree_bound = 2) {
        std::vector<Edge> edges;
        for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
        return BackboneTree(n, std::move(edges), degree_bound);
    }

    int n() const noexcept { return n_; }
    int degree_bound() const noexcept { return degree_bound_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }

    int max_degree() const noexcept {
        std::size_t best = 0;
        for (const auto& list : adj_) best = std::max(best, list.size());
        return static_cast<int>(best);
    }

    bool has_edge(Vertex a, Vertex b) const {
        const auto& list = neighbors(a);
        return std::binary_search(list.begin(), list.end(), b);
    }

private:
    int n_ = 0;
    int degree_bound_ = 1;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

inline Report validate_backbone(const UndirectedGraph& g, const BackboneTree& h) {
    if (g.n() != h.n()) {
        return Report::fail("backbone has " + std::to_string(h.n()) + " vertices, graph has " +
                            std::to_string(g.n()));
    }
    const int n = h.n();
    if (h.degree_bound() < 1) return Report::fail("degree bound must be at least 1");
    const auto& edges = h.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].u == edges[i].v) return Report::fail("backbone self-loop at " + std::to_string(edges[i].u));
        if (i && edges[i] == edges[i - 1]) return Report::fail("duplicate backbone edge " + to_string(edges[i]));
    }
    if (static_cast<int>(edges.size()) != n - 1) {
        return Report::fail("backbone has " + std::to_string(edges.size()) + " edges, a spanning tree needs " +
                            std::to_string(n - 1));
    }
    for (Edge e : edges) {
        if (!g.adjacent(e.u, e.v)) return Report::fail("backbone edge " + to_string(e) + " is not in the graph");
    }
    for (Vertex v = 0; v < n; ++v) {
        const int deg = static_cast<int>(h.neighbors(v).size());
        if (deg > h.degree_bound()) {
            return Report::fail("vertex " + std::to_string(v) + " has degree " + std::to_string(deg) + " > " +
                                std::to_string(h.degree_bound()));
        }
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : h.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (!seen[v]) return Report::fail("backbone is not connected: vertex " + std::to_string(v) + " unreachable from 0");
    }
    return Report::pass();
}

/// All cliques of exactly `size` vertices, in lexicographic order.
inline std::vector<Clique> enumerate_cliques(const UndirectedGraph& g, int size) {
    std::vector<Clique> out;
    if (size <= 0 || size > g.n()) return out;
    std::vector<Vertex> current;
    std::function<void(const std::vector<Vertex>&)> extend = [&](const std::vector<Vertex>& candidates) {
        if (static_cast<int>(current.size()) == size) {
            out.emplace_back(current);
            return;
        }
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            Vertex v = candidates[i];
            std::vector<Vertex> next;
            for (std::size_t j = i + 1; j < candidates.size(); ++j) {
                if (g.adjacent(v, candidates[j])) next.push_back(candidates[j]);
            }
            if (static_cast<int>(current.size() + 1 + next.size()) < size) continue;
            current.push_back(v);
            extend(next);
            current.pop_back();
        }
    };
    std::vector<Vertex> all(static_cast<std::size_t>(g.n()));
    for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
    extend(all);
    return out;
}

/// One application of the k-tree construction: `vertex` joins and is wired to `precursors`.
struct CreationStep {
    Vertex vertex = 0;
    std::vector<Vertex> precursors;  // sorted

    friend bool operator==(const CreationStep&, const CreationStep&) = default;
};

/// A k-tree. Identity is the edge set; creation_order is one witness of how it was built.
/// The first min(n, k+1) steps form the initial clique with nested precursors
/// (step j has the first j vertices as precursors); every later step has exactly k.
struct KTree {
    int n = 0;
    int k = 0;
    std::vector<Edge> edges;  // sorted, canonical
    std::vector<CreationStep> creation_order;
    Clique root_clique;

    bool has_edge(Vertex a, Vertex b) const {
        return std::binary_search(edges.begin(), edges.end(), make_edge(a, b));
    }
};

namespace detail {

// Replays a creation order. Returns the edge set, or a description of the first broken rule.
inline std::variant<std::vector<Edge>, std::string> replay(int n, int k, const std::vector<CreationStep>& order) {
    if (k < 1) return std::string("k must be at least 1");
    if (n < k) return "n = " + std::to_string(n) + " is smaller than k = " + std::to_string(k);
    if (static_cast<int>(order.size()) != n) {
        return "creation order has " + std::to_string(order.size()) + " steps for " + std::to_string(n) + " vertices";
    }
    std::vector<char> placed(static_cast<std::size_t>(n), 0);
    std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    auto at = [&](Vertex a, Vertex b) -> std::uint8_t& {
        return adj[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)];
    };
    std::vector<Edge> edges;
    for (std::size_t j = 0; j < order.size(); ++j) {
        const auto& step = order[j];
        Vertex v = step.vertex;
        if (v < 0 || v >= n) return "step " + std::to_string(j) + " creates out-of-range vertex " + std::to_string(v);
        if (placed[v]) return "vertex " + std::to_string(v) + " is created twice";
        const auto& pre = step.precursors;
        if (!std::is_sorted(pre.begin(), pre.end()) || std::adjacent_find(pre.begin(), pre.end()) != pre.end()) {
            return "precursors of vertex " + std::to_string(v) + " are not a sorted set";
        }
        for (Vertex p : pre) {
            if (p < 0 || p >= n || !placed[p]) {
                return "precursor " + std::to_string(p) + " of vertex " + std::to_string(v) + " is not yet created";
            }
        }
        if (j <= static_cast<std::size_t>(k)) {
            // Initial clique: nested chain, plus the first rule-2 vertex on the whole k-clique.
            std::vector<Vertex> expect;
            for (std::size_t i = 0; i < j; ++i) expect.push_back(order[i].vertex);
            std::sort(expect.begin(), expect.end());
            if (pre != expect) {
                return "vertex " + std::to_string(v) + " at step " + std::to_string(j) +
                       " must have all earlier vertices as precursors";
            }
        } else {
            if (static_cast<int>(pre.size()) != k) {
                return "vertex " + std::to_string(v) + " attaches to " + std::to_string(pre.size()) +
                       " vertices, expected " + std::to_string(k);
            }
            for (std::size_t a = 0; a < pre.size(); ++a) {
                for (std::size_t b = a + 1; b < pre.size(); ++b) {
                    if (!at(pre[a], pre[b])) {
                        return "precursors of vertex " + std::to_string(v) + " do not form a clique";
                    }
                }
            }
        }
        for (Vertex p : pre) {
            at(p, v) = at(v, p) = 1;
            edges.push_back(make_edge(p, v));
        }
        placed[v] = 1;
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

inline Clique initial_clique(int k, const std::vector<CreationStep>& order) {
    std::vector<Vertex> members;
    for (std::size_t j = 0; j < order.size() && j <= static_cast<std::size_t>(k); ++j) {
        members.push_back(order[j].vertex);
    }
    return Clique(std::move(members));
}

} // namespace detail

/// Builds a k-tree by replaying a creation order; throws InvalidInput if a rule is broken.
inline KTree make_ktree(int n, int k, std::vector<CreationStep> order) {
    auto replayed = detail::replay(n, k, order);
    if (auto* why = std::get_if<std::string>(&replayed)) throw InvalidInput("invalid k-tree: " + *why);
    KTree t;
    t.n = n;
    t.k = k;
    t.edges = std::move(std::get<std::vector<Edge>>(replayed));
    t.root_clique = detail::initial_clique(k, order);
    t.creation_order = std::move(order);
    return t;
}

/// Rebuilds a creation order for an edge set, starting from `root` (k+1 vertices, or k when n == k).
/// Vertices are added smallest-first whenever their already-placed neighbours form a k-clique.
inline KTree ktree_from_edges(int n, int k, std::vector<Edge> edges, const Clique& root) {
    const std::size_t root_size = static_cast<std::size_t>(std::min(n, k + 1));
    if (root.size() != root_size) throw InvalidInput("root clique has wrong size");
    UndirectedGraph g(n, std::move(edges));
    if (!g.is_clique(root.members())) throw InvalidInput("root " + to_string(root) + " is not a clique");

    std::vector<CreationStep> order;
    std::vector<char> placed(static_cast<std::size_t>(n), 0);
    for (std::size_t j = 0; j < root.size(); ++j) {
        CreationStep step{root[j], {}};
        for (std::size_t i = 0; i < j; ++i) step.precursors.push_back(root[i]);
        order.push_back(std::move(step));
        placed[root[j]] = 1;
    }
    while (static_cast<int>(order.size()) < n) {
        bool progressed = false;
        for (Vertex v = 0; v < n && !progressed; ++v) {
            if (placed[v]) continue;
            std::vector<Vertex> back;
            for (Vertex w : g.neighbors(v)) {
                if (placed[w]) back.push_back(w);
            }
            if (static_cast<int>(back.size()) != k || !g.is_clique(back)) continue;
            order.push_back({v, std::move(back)});
            placed[v] = 1;
            progressed = true;
        }
        if (!progressed) throw InvalidInput("edge set is not a " + std::to_string(k) + "-tree grown from root " + to_string(root));
    }
    KTree t = make_ktree(n, k, std::move(order));
    if (t.edges != g.edges()) throw InvalidInput("edge set is not a " + std::to_string(k) + "-tree");
    return t;
}

inline Report validate_ktree(const KTree& t) {
    auto replayed = detail::replay(t.n, t.k, t.creation_order);
    if (auto* why = std::get_if<std::string>(&replayed)) return Report::fail(*why);
    const auto& edges = std::get<std::vector<Edge>>(replayed);
    std::vector<Edge> claimed = t.edges;
    for (auto& e : claimed) e = make_edge(e.u, e.v);
    std::sort(claimed.begin(), claimed.end());
    if (claimed != edges) return Report::fail("edge set differs from the one produced by the creation order");

    const long long n = t.n;
    const long long k = t.k;
    const long long expected_edges = k * (k - 1) / 2 + k * (n - k);
    if (static_cast<long long>(claimed.size()) != expected_edges) {
        return Report::fail("edge count " + std::to_string(claimed.size()) + " != " + std::to_string(expected_edges));
    }
    if (t.root_clique != detail::initial_clique(t.k, t.creation_order)) {
        return Report::fail("root clique does not match the creation order");
    }
    if (n > k) {
        UndirectedGraph g(t.n, claimed);
        const auto cliques = enumerate_cliques(g, t.k + 1);
        if (static_cast<long long>(cliques.size()) != n - k) {
            return Report::fail("graph has " + std::to_string(cliques.size()) + " (k+1)-cliques, expected " +
                                std::to_string(n - k));
        }
    }
    return Report::pass();
}

/// Rooted tree over the (k+1)-cliques. nodes[0] is the root; each other node is
/// pivot[i] joined to a k-subset of its parent.
struct TreeDecomposition {
    std::vector<Clique> nodes;
    std::vector<int> parent;    // -1 for the root
    std::vector<Vertex> pivot;  // for the root: the last vertex of the initial clique

    std::size_t size() const noexcept { return nodes.size(); }
    const Clique& root() const { return nodes.front(); }

    int index_of(const Clique& c) const {
        auto it = std::find(nodes.begin(), nodes.end(), c);
        return it == nodes.end() ? -1 : static_cast<int>(it - nodes.begin());
    }
};

inline TreeDecomposition build_tree_decomposition(const KTree& t) {
    if (auto r = validate_ktree(t); !r.ok()) throw InvalidInput("invalid k-tree: " + *r.violation);
    TreeDecomposition td;
    if (t.n == t.k) return td;

    std::vector<int> position(static_cast<std::size_t>(t.n), -1);
    for (std::size_t j = 0; j < t.creation_order.size(); ++j) position[t.creation_order[j].vertex] = static_cast<int>(j);
    std::vector<int> node_of(static_cast<std::size_t>(t.n), 0);

    const auto& order = t.creation_order;
    td.nodes.push_back(t.root_clique);
    td.parent.push_back(-1);
    td.pivot.push_back(order[static_cast<std::size_t>(t.k)].vertex);
    for (std::size_t j = static_cast<std::size_t>(t.k) + 1; j < order.size(); ++j) {
        const auto& step = order[j];
        Vertex latest = step.precursors.front();
        for (Vertex p : step.precursors) {
            if (position[p] > position[latest]) latest = p;
        }
        const int parent = position[latest] >= t.k ? node_of[latest] : 0;
        node_of[step.vertex] = static_cast<int>(td.nodes.size());
        td.nodes.push_back(Clique(step.precursors).with(step.vertex));
        td.parent.push_back(parent);
        td.pivot.push_back(step.vertex);
    }
    return td;
}

/// Checks the rooted-tree, neighbour and running-intersection properties of a decomposition.
inline Report check_decomposition(const TreeDecomposition& td, int n, int k) {
    const std::size_t m = td.nodes.size();
    if (n == k) return m == 0 ? Report::pass() : Report::fail("n == k needs an empty decomposition");
    if (static_cast<int>(m) != n - k) {
        return Report::fail(std::to_string(m) + " nodes, expected " + std::to_string(n - k));
    }
    if (td.parent.size() != m || td.pivot.size() != m) return Report::fail("parent/pivot arrays have wrong length");
    for (std::size_t i = 0; i < m; ++i) {
        if (static_cast<int>(td.nodes[i].size()) != k + 1) return Report::fail("node " + to_string(td.nodes[i]) + " has wrong size");
        if (!td.nodes[i].contains(td.pivot[i])) return Report::fail("pivot outside node " + to_string(td.nodes[i]));
        for (Vertex v : td.nodes[i]) {
            if (v < 0 || v >= n) return Report::fail("node vertex out of range");
        }
    }
    if (td.parent[0] != -1) return Report::fail("node 0 must be the root");
    for (std::size_t i = 1; i < m; ++i) {
        const int p = td.parent[i];
        if (p < 0 || p >= static_cast<int>(m) || p == static_cast<int>(i)) return Report::fail("bad parent index");
        std::size_t shared = 0;
        for (Vertex v : td.nodes[i]) shared += td.nodes[p].contains(v) ? 1 : 0;
        if (shared != static_cast<std::size_t>(k)) {
            return Report::fail(to_string(td.nodes[i]) + " shares " + std::to_string(shared) + " vertices with its parent");
        }
        if (td.nodes[p].contains(td.pivot[i])) return Report::fail("pivot of " + to_string(td.nodes[i]) + " is in its parent");
        // walk to the root to rule out cycles
        std::size_t steps = 0;
        for (int a = static_cast<int>(i); a != 0; a = td.parent[a]) {
            if (++steps > m) return Report::fail("parent relation has a cycle");
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (td.nodes[i] == td.nodes[j]) return Report::fail("node " + to_string(td.nodes[i]) + " repeated");
        }
    }
    // Nodes holding v form a subtree iff exactly one of them has a parent without v.
    for (Vertex v = 0; v < n; ++v) {
        int tops = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!td.nodes[i].contains(v)) continue;
            if (i == 0 || !td.nodes[td.parent[i]].contains(v)) ++tops;
        }
        if (tops != 1) {
            return Report::fail("vertex " + std::to_string(v) + " appears in " + std::to_string(tops) +
                                " disconnected parts of the tree");
        }
    }
    return Report::pass();
}

/// Precursor set of every vertex, indexed by vertex id.
inline std::vector<std::vector<Vertex>> derive_precursor(const KTree& t) {
    std::vector<std::vector<Vertex>> pre(static_cast<std::size_t>(t.n));
    for (const auto& step : t.creation_order) pre.at(static_cast<std::size_t>(step.vertex)) = step.precursors;
    return pre;
}

} // namespace mskt
