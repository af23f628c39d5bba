#pragma once

// Seeded ground-truth instances: backbone, retaining k-tree, conditional tables, samples.

#include <cstdint>
#include <string>
#include <vector>

#include "mskt/errors.hpp"
#include "mskt/graph.hpp"
#include "mskt/info.hpp"
#include "mskt/random.hpp"
#include "mskt/score.hpp"
#include "mskt/solver.hpp"

namespace mskt {

struct TableStyle {
    int alphabet = 2;
    /// Dirichlet concentration for flat tables (1 = uniform on the simplex).
    double alpha = 1.0;
    /// Strong tables put most mass on one symbol chosen by a random linear rule of the parents.
    bool strong = false;
    double strong_low = 0.85;
    double strong_high = 0.95;
};

/// One table per creation step, parents = precursors.
inline std::vector<ConditionalTable> random_tables(const KTree& t, const TableStyle& style, Rng& rng) {
    if (style.alphabet < 2) throw InvalidInput("alphabet must have at least two symbols");
    const int a = style.alphabet;
    std::vector<ConditionalTable> tables;
    for (const auto& step : t.creation_order) {
        ConditionalTable tab{step.vertex, step.precursors, a, {}};
        std::size_t rows = 1;
        for (std::size_t i = 0; i < step.precursors.size(); ++i) rows *= static_cast<std::size_t>(a);
        std::vector<int> coef(step.precursors.size());
        for (int& c : coef) c = rng.between(1, a - 1);
        const int offset = rng.between(0, a - 1);
        for (std::size_t r = 0; r < rows; ++r) {
            if (!style.strong) {
                const auto dist = rng.dirichlet(a, style.alpha);
                tab.probs.insert(tab.probs.end(), dist.begin(), dist.end());
                continue;
            }
            if (step.precursors.empty()) {
                tab.probs.insert(tab.probs.end(), static_cast<std::size_t>(a), 1.0 / a);
                continue;
            }
            int dominant = offset;
            std::size_t code = r;
            for (std::size_t i = coef.size(); i-- > 0;) {
                dominant += coef[i] * static_cast<int>(code % static_cast<std::size_t>(a));
                code /= static_cast<std::size_t>(a);
            }
            dominant %= a;
            const double mass = style.strong_low + (style.strong_high - style.strong_low) * rng.uniform();
            for (int x = 0; x < a; ++x) tab.probs.push_back(x == dominant ? mass : (1.0 - mass) / (a - 1));
        }
        tables.push_back(std::move(tab));
    }
    return tables;
}

/// A retaining k-tree of the complete graph drawn by maximising seeded random clique scores.
inline KTree random_retaining_ktree(const BackboneTree& h, int k, std::uint64_t seed) {
    const auto g = UndirectedGraph::complete(h.n());
    const RandomScoreOracle f(seed, g);
    return solve_retaining_mskt(g, h, k, f).ktree;
}

struct GeneratedInstance {
    UndirectedGraph graph;
    BackboneTree backbone;
    KTree truth;
    std::vector<ConditionalTable> tables;
    SampleMatrix samples;
};

/// Independent streams for backbone, truth, tables and samples, all derived from `seed`.
inline GeneratedInstance generate_instance(int n, int k, int degree, std::size_t m, std::uint64_t seed,
                                           const TableStyle& style = {}) {
    if (degree < 2) throw InvalidInput("degree bound must be at least 2");
    if (k < 1 || n <= k) throw InvalidInput("need 1 <= k < n");
    Rng backbone_rng(mix64(seed ^ 0x6261636b626f6e65ULL));
    BackboneTree h = random_backbone(n, degree, backbone_rng);
    KTree truth = random_retaining_ktree(h, k, mix64(seed ^ 0x7472757468ULL));
    Rng table_rng(mix64(seed ^ 0x7461626c6573ULL));
    auto tables = random_tables(truth, style, table_rng);
    SampleMatrix samples = sample_markov_ktree(truth, tables, m, mix64(seed ^ 0x73616d706c6573ULL));
    return {UndirectedGraph::complete(n), std::move(h), std::move(truth), std::move(tables), std::move(samples)};
}

} // namespace mskt
