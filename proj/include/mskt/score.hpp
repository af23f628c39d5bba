#pragma once

// Clique score oracles: the f maximised by the solver. A score is either a real number or
// forbidden (std::nullopt); forbidden is absorbing under summation.

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string_view>
#include <utility>
#include <vector>

#include "mskt/graph.hpp"
#include "mskt/info.hpp"
#include "mskt/random.hpp"

namespace mskt {

using Score = std::optional<double>;

inline Score operator+(Score a, Score b) {
    if (!a || !b) return std::nullopt;
    return *a + *b;
}

class ScoreOracle {
public:
    virtual ~ScoreOracle() = default;

    virtual std::string_view mode() const noexcept = 0;

    /// Score of the (k+1)-clique created when `pivot` joins the k-clique `base`.
    virtual Score score(Vertex pivot, const Clique& base) const = 0;

    /// Score of the first (k+1)-clique.
    virtual Score root_score(const Clique& clique) const = 0;
};

struct PivotKey {
    Vertex pivot = 0;
    Clique base;

    friend auto operator<=>(const PivotKey&, const PivotKey&) = default;
    friend bool operator==(const PivotKey&, const PivotKey&) = default;
};

/// Explicit score table; absent entries are forbidden.
class TableScoreOracle final : public ScoreOracle {
public:
    TableScoreOracle(int k, std::map<Clique, double> roots, std::map<PivotKey, double> pivots)
        : k_(k), roots_(std::move(roots)), pivots_(std::move(pivots)) {
        for (const auto& [c, s] : roots_) {
            if (static_cast<int>(c.size()) != k_ + 1) throw InvalidInput("root score key " + to_string(c) + " is not a (k+1)-set");
        }
        for (const auto& [key, s] : pivots_) {
            if (static_cast<int>(key.base.size()) != k_ || key.base.contains(key.pivot)) {
                throw InvalidInput("pivot score key " + std::to_string(key.pivot) + "|" + to_string(key.base) + " is malformed");
            }
        }
    }

    std::string_view mode() const noexcept override { return "explicit-table"; }
    int k() const noexcept { return k_; }
    const std::map<Clique, double>& roots() const noexcept { return roots_; }
    const std::map<PivotKey, double>& pivots() const noexcept { return pivots_; }

    Score score(Vertex pivot, const Clique& base) const override {
        auto it = pivots_.find(PivotKey{pivot, base});
        if (it == pivots_.end()) return std::nullopt;
        return it->second;
    }

    Score root_score(const Clique& clique) const override {
        auto it = roots_.find(clique);
        if (it == roots_.end()) return std::nullopt;
        return it->second;
    }

private:
    int k_;
    std::map<Clique, double> roots_;
    std::map<PivotKey, double> pivots_;
};

/// f(clique) = product of edge weights inside the clique, independent of the pivot.
/// Edges without a weight count as 1; non-edges make the clique forbidden.
class WeightProductOracle final : public ScoreOracle {
public:
    explicit WeightProductOracle(UndirectedGraph g) : g_(std::move(g)) {}

    std::string_view mode() const noexcept override { return "weight-product"; }

    Score score(Vertex pivot, const Clique& base) const override {
        if (base.contains(pivot)) return std::nullopt;
        return product(base.with(pivot));
    }

    Score root_score(const Clique& clique) const override { return product(clique); }

private:
    Score product(const Clique& c) const {
        double p = 1.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                if (!g_.adjacent(c[i], c[j])) return std::nullopt;
                p *= g_.weight(c[i], c[j]).value_or(1.0);
            }
        }
        return p;
    }

    UndirectedGraph g_;
};

/// Mutual-information scores: pivot score I(w; base), root score the total correlation of
/// the root clique. Cliques absent from the host graph are forbidden. Entropies are cached;
/// concurrent readers are fine and racing writers store identical values.
template <DistributionSource S>
class MiScoreOracle final : public ScoreOracle {
public:
    MiScoreOracle(S source, UndirectedGraph g) : source_(std::move(source)), g_(std::move(g)) {
        if (source_.n_vars() < g_.n()) throw InvalidInput("distribution covers fewer variables than the graph");
    }

    std::string_view mode() const noexcept override { return "mi"; }
    const S& source() const noexcept { return source_; }

    Score score(Vertex pivot, const Clique& base) const override {
        if (base.contains(pivot)) return std::nullopt;
        const Clique all = base.with(pivot);
        if (!g_.is_clique(all.members())) return std::nullopt;
        if (base.empty()) return 0.0;
        const double mi = cached_entropy({pivot}) + cached_entropy(base.vec()) - cached_entropy(all.vec());
        return std::max(mi, 0.0);
    }

    Score root_score(const Clique& clique) const override {
        if (!g_.is_clique(clique.members())) return std::nullopt;
        double sum = 0.0;
        for (Vertex v : clique) sum += cached_entropy({v});
        return std::max(sum - cached_entropy(clique.vec()), 0.0);
    }

private:
    double cached_entropy(const std::vector<Vertex>& vars) const {
        {
            std::shared_lock lock(mutex_);
            if (auto it = entropy_.find(vars); it != entropy_.end()) return it->second;
        }
        const double h = entropy(source_, vars);
        std::unique_lock lock(mutex_);
        entropy_.emplace(vars, h);
        return h;
    }

    S source_;
    UndirectedGraph g_;
    mutable std::shared_mutex mutex_;
    mutable std::map<std::vector<Vertex>, double> entropy_;
};

/// Seeded pseudo-random scores in [0, 1); used to draw random retaining k-trees.
class RandomScoreOracle final : public ScoreOracle {
public:
    RandomScoreOracle(std::uint64_t seed, UndirectedGraph g) : seed_(seed), g_(std::move(g)) {}

    std::string_view mode() const noexcept override { return "random"; }

    Score score(Vertex pivot, const Clique& base) const override {
        if (base.contains(pivot) || !g_.is_clique(base.with(pivot).members())) return std::nullopt;
        return unit(hash(base, mix64(seed_ ^ static_cast<std::uint64_t>(pivot + 1))));
    }

    Score root_score(const Clique& clique) const override {
        if (!g_.is_clique(clique.members())) return std::nullopt;
        return unit(hash(clique, mix64(seed_)));
    }

private:
    static std::uint64_t hash(const Clique& c, std::uint64_t h) {
        for (Vertex v : c) h = mix64(h ^ static_cast<std::uint64_t>(v));
        return h;
    }
    static double unit(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

    std::uint64_t seed_;
    UndirectedGraph g_;
};

/// Explicit table holding every finite score the oracle assigns to the (k+1)-cliques of g.
inline TableScoreOracle materialize(const ScoreOracle& f, const UndirectedGraph& g, int k) {
    std::map<Clique, double> roots;
    std::map<PivotKey, double> pivots;
    for (const auto& c : enumerate_cliques(g, k + 1)) {
        if (auto s = f.root_score(c)) roots.emplace(c, *s);
        for (Vertex w : c) {
            Clique base = c.without(w);
            if (auto s = f.score(w, base)) pivots.emplace(PivotKey{w, std::move(base)}, *s);
        }
    }
    return TableScoreOracle(k, std::move(roots), std::move(pivots));
}

} // namespace mskt
