#pragma once

// Maximum spanning k-tree that retains a bounded-degree spanning tree, by dynamic
// programming over (clique, set of backbone components still to span).
//
// F(Q, I) is the best total score of the cliques hanging below clique Q that span the
// backbone components listed in I (components of H - Q). A child of Q takes a group of
// components T containing the smallest id in I, a pivot w from their union, and a dropped
// vertex x of Q that has no backbone edge into that union:
//
//   F(Q, I) = max_{T, w, x} F(Q - x + w, J) + F(Q, I - T) + f(w, Q - x),   F(Q, {}) = 0
//
// where J lists the components of H - (Q - x + w) inside the union minus w. The answer is
// the best F(R, all components of H - R) + f_root(R) over cliques R of the host graph.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "mskt/errors.hpp"
#include "mskt/graph.hpp"
#include "mskt/info.hpp"
#include "mskt/score.hpp"
#include "mskt/separation.hpp"

namespace mskt {

struct SolveOptions {
    int threads = 1;
    bool memoize = true;
};

struct CliqueScore {
    Vertex pivot = 0;
    Clique base;
    double score = 0.0;
};

struct SolveResult {
    KTree ktree;
    TreeDecomposition decomposition;
    double score = 0.0;
    double root_score_component = 0.0;
    std::vector<CliqueScore> cliques;  // non-root cliques, in creation order
};

/// root_score(root clique) + sum of pivot scores along the creation order.
/// Throws NotRetaining if a backbone edge is missing from t.
inline Score score_ktree(const KTree& t, const BackboneTree& h, const ScoreOracle& f) {
    if (auto r = validate_ktree(t); !r.ok()) throw InvalidInput("invalid k-tree: " + *r.violation);
    for (Edge e : h.edges()) {
        if (!t.has_edge(e.u, e.v)) throw NotRetaining("backbone edge " + to_string(e) + " is missing from the k-tree");
    }
    if (t.n == t.k) return 0.0;
    Score total = f.root_score(t.root_clique);
    for (std::size_t j = static_cast<std::size_t>(t.k) + 1; j < t.creation_order.size() && total; ++j) {
        const auto& step = t.creation_order[j];
        total = total + f.score(step.vertex, Clique(step.precursors));
    }
    return total;
}

namespace detail {

class RetainingDp {
public:
    using Mask = std::uint64_t;

    static constexpr std::size_t kDenseMemoComponents = 12;

    struct Choice {
        Mask group = 0;
        Vertex pivot = -1;
        Vertex drop = -1;
    };

    struct Entry {
        Score value;
        Choice choice;
    };

    struct Node;

    // Child reached by adding a pivot and dropping one clique position. child is null until
    // computed and points at the shared sentinel when the move is forbidden.
    struct Link {
        double score = 0.0;
        Node* child = nullptr;
    };

    struct Node {
        Clique clique;
        std::vector<int> component_of;               // per vertex, -1 on the clique
        std::vector<std::vector<Vertex>> components;  // ordered by smallest vertex
        std::vector<std::uint32_t> attach;            // per component: clique positions with a backbone edge into it
        std::mutex mutex;
        std::unordered_map<Mask, Entry> memo;      // used when there are too many components for `dense`
        std::vector<std::optional<Entry>> dense;  // indexed by mask
        std::vector<Link> links;                  // indexed by pivot * (k+1) + dropped position

        Mask all() const noexcept {
            return components.size() == 64 ? ~Mask{0} : (Mask{1} << components.size()) - 1;
        }
    };

    RetainingDp(const UndirectedGraph& g, const BackboneTree& h, int k, const ScoreOracle& f, bool memoize)
        : g_(g), h_(h), k_(k), f_(f), memoize_(memoize) {}

    Node& node(const Clique& c) {
        auto& shard = shards_[CliqueHash{}(c) % shards_.size()];
        std::lock_guard lock(shard.mutex);
        auto [it, inserted] = shard.nodes.try_emplace(c);
        if (inserted) it->second = make_node(c);
        return *it->second;
    }

    Score value(Node& q, Mask mask) { return lookup(q, mask).value; }

    Entry lookup(Node& q, Mask mask) {
        if (mask == 0) return Entry{0.0, {}};
        if (!memoize_) return evaluate(q, mask);
        const bool dense = !q.dense.empty();
        {
            std::lock_guard lock(q.mutex);
            if (dense) {
                if (q.dense[mask]) return *q.dense[mask];
            } else if (auto it = q.memo.find(mask); it != q.memo.end()) {
                return it->second;
            }
        }
        Entry e = evaluate(q, mask);
        std::lock_guard lock(q.mutex);
        if (dense) {
            if (!q.dense[mask]) q.dense[mask] = e;
            return *q.dense[mask];
        }
        return q.memo.try_emplace(mask, e).first->second;
    }

    bool forbidden(const Link& l) const noexcept { return l.child == &forbidden_; }

    /// Pivot score and child node for adding w and dropping clique position pos.
    Link link(Node& q, Vertex w, std::size_t pos) {
        const std::size_t slot = static_cast<std::size_t>(w) * q.clique.size() + pos;
        {
            std::lock_guard lock(q.mutex);
            if (q.links[slot].child) return q.links[slot];
        }
        Link l{0.0, &forbidden_};
        const Vertex drop = q.clique[pos];
        bool joins = true;
        for (Vertex b : q.clique) {
            if (b != drop && !g_.adjacent(w, b)) {
                joins = false;
                break;
            }
        }
        if (joins) {
            const Clique base = q.clique.without(drop);
            if (const Score fw = f_.score(w, base)) l = Link{*fw, &node(base.with(w))};
        }
        std::lock_guard lock(q.mutex);
        q.links[slot] = l;
        return l;
    }

    /// Components of H - child that lie inside the parent's group.
    static Mask child_mask(const Node& parent, Mask group, const Node& child) {
        Mask out = 0;
        for (std::size_t j = 0; j < child.components.size(); ++j) {
            const int pc = parent.component_of[child.components[j].front()];
            if (pc >= 0 && ((group >> pc) & 1)) out |= Mask{1} << j;
        }
        return out;
    }

    const ScoreOracle& oracle() const noexcept { return f_; }

private:
    struct Shard {
        std::mutex mutex;
        std::unordered_map<Clique, std::unique_ptr<Node>, CliqueHash> nodes;
    };

    std::unique_ptr<Node> make_node(const Clique& c) const {
        auto q = std::make_unique<Node>();
        q->clique = c;
        ComponentMap map = separate(h_, c);
        if (map.size() > 64) throw InstanceTooLarge("more than 64 backbone components around " + to_string(c));
        q->component_of = std::move(map.component_of);
        q->components = std::move(map.components);
        q->attach.assign(q->components.size(), 0);
        if (q->components.size() <= kDenseMemoComponents) q->dense.resize(std::size_t{1} << q->components.size());
        q->links.resize(static_cast<std::size_t>(g_.n()) * c.size());
        for (std::size_t pos = 0; pos < c.size(); ++pos) {
            for (Vertex w : h_.neighbors(c[pos])) {
                const int comp = q->component_of[w];
                if (comp >= 0) q->attach[comp] |= std::uint32_t{1} << pos;
            }
        }
        return q;
    }

    Entry evaluate(Node& q, Mask mask) {
        Entry best;
        const Mask lowest = mask & (~mask + 1);
        const Mask rest = mask ^ lowest;
        std::vector<Vertex> region;
        // Submasks of `rest` in increasing numeric order.
        for (Mask s = 0;; s = (s - rest) & rest) {
            const Mask group = lowest | s;
            const Score tail = value(q, mask ^ group);
            if (tail) {
                std::uint32_t blocked = 0;
                region.clear();
                for (Mask bits = group; bits; bits &= bits - 1) {
                    const int comp = std::countr_zero(bits);
                    blocked |= q.attach[comp];
                    region.insert(region.end(), q.components[comp].begin(), q.components[comp].end());
                }
                std::sort(region.begin(), region.end());
                for (Vertex w : region) {
                    for (std::size_t pos = 0; pos < q.clique.size(); ++pos) {
                        if ((blocked >> pos) & 1) continue;
                        const Link l = link(q, w, pos);
                        if (forbidden(l)) continue;
                        const Score below = value(*l.child, child_mask(q, group, *l.child));
                        if (!below) continue;
                        const double total = *below + *tail + l.score;
                        if (!best.value || total > *best.value) best = Entry{total, Choice{group, w, q.clique[pos]}};
                    }
                }
            }
            if (s == rest) break;
        }
        return best;
    }

    const UndirectedGraph& g_;
    const BackboneTree& h_;
    int k_;
    const ScoreOracle& f_;
    bool memoize_;
    std::array<Shard, 64> shards_;
    Node forbidden_;
};

inline std::vector<CreationStep> nested_root_steps(const Clique& root) {
    std::vector<CreationStep> steps;
    for (std::size_t j = 0; j < root.size(); ++j) {
        CreationStep step{root[j], {}};
        for (std::size_t i = 0; i < j; ++i) step.precursors.push_back(root[i]);
        steps.push_back(std::move(step));
    }
    return steps;
}

inline std::string infeasibility_reason(const UndirectedGraph& g, const BackboneTree& h, int k,
                                        const std::vector<Clique>& cliques) {
    for (Edge e : h.edges()) {
        const bool covered = std::any_of(cliques.begin(), cliques.end(),
                                         [&](const Clique& c) { return c.contains(e.u) && c.contains(e.v); });
        if (!covered) {
            return "backbone edge " + to_string(e) + " lies in no " + std::to_string(k + 1) + "-clique of the graph";
        }
    }
    (void)g;
    return "no spanning " + std::to_string(k) + "-tree of the graph retains the backbone with finite score";
}

} // namespace detail

inline SolveResult solve_retaining_mskt(const UndirectedGraph& g, const BackboneTree& h, int k, const ScoreOracle& f,
                                        SolveOptions options = {}) {
    if (auto r = validate_backbone(g, h); !r.ok()) throw InvalidInput("invalid backbone: " + *r.violation);
    const int n = g.n();
    if (k < 1) throw InvalidInput("k must be at least 1");
    if (k > n) throw InvalidInput("k = " + std::to_string(k) + " exceeds the vertex count " + std::to_string(n));

    SolveResult result;
    if (n == k) {
        std::vector<Vertex> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        if (!g.is_clique(all)) throw Infeasible("graph on " + std::to_string(n) + " vertices is not a " + std::to_string(k) + "-clique");
        result.ktree = make_ktree(n, k, detail::nested_root_steps(Clique(all)));
        return result;
    }

    const auto roots = enumerate_cliques(g, k + 1);
    detail::RetainingDp dp(g, h, k, f, options.memoize);

    std::vector<Score> totals(roots.size());
    auto run = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < roots.size(); i += stride) {
            const Score rs = f.root_score(roots[i]);
            if (!rs) continue;
            auto& q = dp.node(roots[i]);
            const Score below = dp.value(q, q.all());
            if (below) totals[i] = *below + *rs;
        }
    };
    const std::size_t workers = static_cast<std::size_t>(std::max(1, options.threads));
    if (workers == 1) {
        run(0, 1);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                try {
                    run(t, workers);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (totals[i] && (!best || *totals[i] > *totals[*best])) best = i;
    }
    if (!best) throw Infeasible(detail::infeasibility_reason(g, h, k, roots));

    // Traceback.
    const Clique& root = roots[*best];
    std::vector<CreationStep> order = detail::nested_root_steps(root);
    TreeDecomposition& td = result.decomposition;
    td.nodes.push_back(root);
    td.parent.push_back(-1);
    td.pivot.push_back(root[root.size() - 1]);

    struct Frame {
        detail::RetainingDp::Node* node;
        detail::RetainingDp::Mask mask;
        int index;
    };
    std::vector<Frame> stack;
    auto& root_node = dp.node(root);
    stack.push_back({&root_node, root_node.all(), 0});
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.mask == 0) {
            stack.pop_back();
            continue;
        }
        const auto entry = dp.lookup(*top.node, top.mask);
        if (!entry.value) throw Error("internal: traceback reached a forbidden state");
        const auto& c = entry.choice;
        const Clique base = top.node->clique.without(c.drop);
        auto& child = dp.node(base.with(c.pivot));
        const auto mask = detail::RetainingDp::child_mask(*top.node, c.group, child);
        top.mask ^= c.group;
        const int parent_index = top.index;

        const int index = static_cast<int>(td.nodes.size());
        td.nodes.push_back(child.clique);
        td.parent.push_back(parent_index);
        td.pivot.push_back(c.pivot);
        result.cliques.push_back({c.pivot, base, *f.score(c.pivot, base)});
        order.push_back({c.pivot, base.vec()});
        stack.push_back({&child, mask, index});
    }

    result.ktree = make_ktree(n, k, std::move(order));
    result.root_score_component = *f.root_score(root);
    const Score rescored = score_ktree(result.ktree, h, f);
    if (!rescored) throw Error("internal: solution rescored as forbidden");
    result.score = *rescored;
    return result;
}

/// Maximum-weight spanning tree under pairwise mutual information. Ties go to the
/// lexicographically smaller edge.
template <DistributionSource S>
KTree chow_liu(const S& source) {
    const int n = source.n_vars();
    if (n < 2) throw InvalidInput("Chow-Liu needs at least two variables");
    struct Weighted {
        double w;
        Edge e;
    };
    std::vector<Weighted> candidates;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
            const Vertex ys[] = {b};
            candidates.push_back({mutual_information(source, a, ys), Edge{a, b}});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Weighted& x, const Weighted& y) {
        if (x.w != y.w) return x.w > y.w;
        return x.e < y.e;
    });
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::vector<Edge> tree;
    for (const auto& c : candidates) {
        const int ra = find(c.e.u);
        const int rb = find(c.e.v);
        if (ra == rb) continue;
        parent[ra] = rb;
        tree.push_back(c.e);
        if (static_cast<int>(tree.size()) == n - 1) break;
    }
    const Edge first = *std::min_element(tree.begin(), tree.end());
    return ktree_from_edges(n, 1, std::move(tree), Clique{first.u, first.v});
}

} // namespace mskt
