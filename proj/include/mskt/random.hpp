#pragma once

// Seeded randomness. Every stream is std::mt19937_64 (fully specified by the standard) and
// all derived draws are computed here rather than through <random> distributions, whose
// algorithms differ between standard libraries.

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "mskt/errors.hpp"
#include "mskt/graph.hpp"

namespace mskt {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [0, bound), unbiased.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw InvalidInput("empty range");
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform on [lo, hi].
    int between(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    template <class T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /// Gamma(shape, 1) by Marsaglia-Tsang, with the shape+1 boost for shape < 1.
    double gamma(double shape) {
        if (shape <= 0.0) throw InvalidInput("gamma shape must be positive");
        if (shape < 1.0) {
            const double u = 1.0 - uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x;
            double v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = 1.0 - uniform();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
        }
    }

    /// Point on the probability simplex, Dirichlet(alpha, ..., alpha). alpha = 1 is uniform.
    std::vector<double> dirichlet(int size, double alpha) {
        std::vector<double> p(static_cast<std::size_t>(size));
        double total = 0.0;
        for (auto& x : p) total += (x = gamma(alpha));
        if (total <= 0.0) {
            p.assign(p.size(), 0.0);
            p[below(p.size())] = 1.0;
            return p;
        }
        for (auto& x : p) x /= total;
        return p;
    }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finaliser; used for stateless seeded hashing.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Random spanning tree with maximum degree <= degree_bound: vertices join in random order,
/// each attaching to a random earlier vertex that still has spare degree.
inline BackboneTree random_backbone(int n, int degree_bound, Rng& rng) {
    if (n < 1) throw InvalidInput("n must be positive");
    if (degree_bound < 2 && n > 2) throw InvalidInput("degree bound below 2 admits no spanning tree on more than 2 vertices");
    if (degree_bound < 1 && n > 1) throw InvalidInput("degree bound must be at least 1");
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    rng.shuffle(order);
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<Edge> edges;
    std::vector<Vertex> open{order.front()};
    for (std::size_t i = 1; i < order.size(); ++i) {
        const std::size_t pick = rng.below(open.size());
        const Vertex parent = open[pick];
        const Vertex child = order[i];
        edges.push_back(make_edge(parent, child));
        if (++degree[parent] == degree_bound) {
            open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        if (++degree[child] < degree_bound) open.push_back(child);
    }
    return BackboneTree(n, std::move(edges), degree_bound);
}

} // namespace mskt
