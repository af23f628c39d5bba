#pragma once

// Plug-in entropy and mutual information (bits), Markov k-tree distributions, KL divergence,
// and ancestral sampling from conditional tables.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mskt/errors.hpp"
#include "mskt/graph.hpp"
#include "mskt/random.hpp"

namespace mskt {

inline constexpr std::size_t kMaxDenseCells = std::size_t{1} << 20;
inline constexpr double kProbabilityTolerance = 1e-9;

namespace detail {

inline std::size_t cell_count(std::span<const int> alphabets, std::size_t limit) {
    std::size_t cells = 1;
    for (int a : alphabets) {
        if (a < 1) throw InvalidInput("alphabet size must be positive");
        if (cells > limit / static_cast<std::size_t>(a)) {
            throw InstanceTooLarge("assignment space exceeds " + std::to_string(limit) + " cells");
        }
        cells *= static_cast<std::size_t>(a);
    }
    return cells;
}

inline double plogp_sum(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

inline std::vector<Vertex> as_set(std::span<const Vertex> vars) {
    std::vector<Vertex> s(vars.begin(), vars.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

} // namespace detail

/// Discrete samples: n_samples rows of n_vars symbols.
class SampleMatrix {
public:
    SampleMatrix() = default;

    SampleMatrix(std::vector<int> alphabets, std::vector<std::vector<int>> rows)
        : alphabets_(std::move(alphabets)) {
        if (alphabets_.empty()) throw InvalidInput("samples need at least one variable");
        if (rows.empty()) throw InvalidInput("samples need at least one row");
        for (int a : alphabets_) {
            if (a < 1) throw InvalidInput("alphabet size must be positive");
        }
        data_.reserve(rows.size() * alphabets_.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != alphabets_.size()) {
                throw InvalidInput("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                   " values, expected " + std::to_string(alphabets_.size()));
            }
            for (std::size_t v = 0; v < alphabets_.size(); ++v) {
                const int s = rows[r][v];
                if (s < 0 || s >= alphabets_[v]) {
                    throw InvalidInput("symbol " + std::to_string(s) + " out of alphabet for x" + std::to_string(v) +
                                       " in row " + std::to_string(r));
                }
                data_.push_back(s);
            }
        }
        n_samples_ = rows.size();
    }

    /// Alphabet sizes inferred as (max symbol + 1), at least 2.
    static SampleMatrix infer(std::vector<std::vector<int>> rows) {
        if (rows.empty()) throw InvalidInput("samples need at least one row");
        std::vector<int> alphabets(rows.front().size(), 2);
        for (const auto& row : rows) {
            for (std::size_t v = 0; v < row.size() && v < alphabets.size(); ++v) {
                if (row[v] < 0) throw InvalidInput("negative symbol in samples");
                alphabets[v] = std::max(alphabets[v], row[v] + 1);
            }
        }
        return SampleMatrix(std::move(alphabets), std::move(rows));
    }

    int n_vars() const noexcept { return static_cast<int>(alphabets_.size()); }
    std::size_t n_samples() const noexcept { return n_samples_; }
    const std::vector<int>& alphabets() const noexcept { return alphabets_; }
    int alphabet(Vertex v) const { return alphabets_.at(static_cast<std::size_t>(v)); }
    int at(std::size_t row, Vertex v) const { return data_[row * alphabets_.size() + static_cast<std::size_t>(v)]; }

    /// Empirical marginal on `vars` (in the given order, last fastest).
    std::vector<double> marginal(std::span<const Vertex> vars) const {
        std::vector<int> alph;
        for (Vertex v : vars) alph.push_back(alphabet(v));
        std::vector<double> table(detail::cell_count(alph, std::size_t{1} << 26), 0.0);
        for (std::size_t r = 0; r < n_samples_; ++r) table[code(r, vars)] += 1.0;
        for (auto& x : table) x /= static_cast<double>(n_samples_);
        return table;
    }

    /// Non-zero empirical probabilities of the joint of `vars`; works for large assignment spaces.
    std::vector<double> support_probabilities(std::span<const Vertex> vars) const {
        std::vector<int> alph;
        for (Vertex v : vars) alph.push_back(alphabet(v));
        std::size_t cells = 0;
        try {
            cells = detail::cell_count(alph, std::size_t{1} << 22);
        } catch (const InstanceTooLarge&) {
            cells = 0;
        }
        std::vector<double> out;
        if (cells != 0 && cells <= 16 * n_samples_ + 1024) {
            std::vector<std::size_t> counts(cells, 0);
            for (std::size_t r = 0; r < n_samples_; ++r) ++counts[code(r, vars)];
            for (auto c : counts) {
                if (c) out.push_back(static_cast<double>(c) / static_cast<double>(n_samples_));
            }
            return out;
        }
        std::vector<std::vector<int>> keys(n_samples_);
        for (std::size_t r = 0; r < n_samples_; ++r) {
            keys[r].reserve(vars.size());
            for (Vertex v : vars) keys[r].push_back(at(r, v));
        }
        std::sort(keys.begin(), keys.end());
        std::size_t run = 1;
        for (std::size_t r = 1; r <= keys.size(); ++r) {
            if (r < keys.size() && keys[r] == keys[r - 1]) {
                ++run;
            } else {
                out.push_back(static_cast<double>(run) / static_cast<double>(n_samples_));
                run = 1;
            }
        }
        return out;
    }

    friend bool operator==(const SampleMatrix&, const SampleMatrix&) = default;

private:
    std::size_t code(std::size_t row, std::span<const Vertex> vars) const {
        std::size_t c = 0;
        for (Vertex v : vars) c = c * static_cast<std::size_t>(alphabet(v)) + static_cast<std::size_t>(at(row, v));
        return c;
    }

    std::vector<int> alphabets_;
    std::size_t n_samples_ = 0;
    std::vector<int> data_;
};

/// Dense joint distribution. Cells are ordered row-major over `vars` (last variable fastest).
class JointTable {
public:
    JointTable() = default;

    JointTable(std::vector<Vertex> vars, std::vector<int> alphabets, std::vector<double> probs)
        : vars_(std::move(vars)), alphabets_(std::move(alphabets)), probs_(std::move(probs)) {
        if (vars_.empty() || vars_.size() != alphabets_.size()) throw InvalidInput("joint table needs one alphabet per variable");
        auto sorted = vars_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InvalidInput("joint table repeats a variable");
        const std::size_t cells = detail::cell_count(alphabets_, std::size_t{1} << 26);
        if (probs_.size() != cells) {
            throw InvalidInput("joint table has " + std::to_string(probs_.size()) + " cells, expected " + std::to_string(cells));
        }
        double total = 0.0;
        for (double p : probs_) {
            if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidInput("joint table has a negative or non-finite probability");
            total += p;
        }
        if (std::abs(total - 1.0) > kProbabilityTolerance) {
            throw InvalidInput("joint table sums to " + std::to_string(total) + ", not 1");
        }
    }

    int n_vars() const noexcept { return static_cast<int>(vars_.size()); }
    const std::vector<Vertex>& vars() const noexcept { return vars_; }
    const std::vector<int>& alphabets() const noexcept { return alphabets_; }
    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }

    int position(Vertex v) const {
        auto it = std::find(vars_.begin(), vars_.end(), v);
        if (it == vars_.end()) throw InvalidInput("variable " + std::to_string(v) + " not in joint table");
        return static_cast<int>(it - vars_.begin());
    }

    int alphabet(Vertex v) const { return alphabets_[static_cast<std::size_t>(position(v))]; }

    std::vector<int> decode(std::size_t index) const {
        std::vector<int> a(vars_.size());
        for (std::size_t i = vars_.size(); i-- > 0;) {
            a[i] = static_cast<int>(index % static_cast<std::size_t>(alphabets_[i]));
            index /= static_cast<std::size_t>(alphabets_[i]);
        }
        return a;
    }

    std::size_t encode(std::span<const int> assignment) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < vars_.size(); ++i) c = c * static_cast<std::size_t>(alphabets_[i]) + static_cast<std::size_t>(assignment[i]);
        return c;
    }

    double prob(std::span<const int> assignment) const { return probs_[encode(assignment)]; }

    /// Marginal on `vars` (in the given order, last fastest).
    std::vector<double> marginal(std::span<const Vertex> vars) const {
        std::vector<int> pos;
        std::vector<int> alph;
        for (Vertex v : vars) {
            pos.push_back(position(v));
            alph.push_back(alphabets_[static_cast<std::size_t>(pos.back())]);
        }
        std::vector<double> table(detail::cell_count(alph, std::size_t{1} << 26), 0.0);
        std::vector<int> digits(vars_.size(), 0);
        for (std::size_t cell = 0; cell < probs_.size(); ++cell) {
            std::size_t c = 0;
            for (std::size_t i = 0; i < pos.size(); ++i) {
                c = c * static_cast<std::size_t>(alph[i]) + static_cast<std::size_t>(digits[static_cast<std::size_t>(pos[i])]);
            }
            table[c] += probs_[cell];
            for (std::size_t i = digits.size(); i-- > 0;) {
                if (++digits[i] < alphabets_[i]) break;
                digits[i] = 0;
            }
        }
        return table;
    }

    std::vector<double> support_probabilities(std::span<const Vertex> vars) const {
        auto table = marginal(vars);
        std::erase_if(table, [](double p) { return p <= 0.0; });
        return table;
    }

private:
    std::vector<Vertex> vars_;
    std::vector<int> alphabets_;
    std::vector<double> probs_;
};

template <class S>
concept DistributionSource = std::same_as<S, SampleMatrix> || std::same_as<S, JointTable>;

/// Plug-in entropy in bits of the joint of `vars` (treated as a set).
template <DistributionSource S>
double entropy(const S& source, std::span<const Vertex> vars) {
    const auto set = detail::as_set(vars);
    if (set.empty()) return 0.0;
    const auto probs = source.support_probabilities(set);
    return detail::plogp_sum(probs);
}

template <DistributionSource S>
double mutual_information(const S& source, Vertex x, std::span<const Vertex> ys) {
    const auto y = detail::as_set(ys);
    if (std::binary_search(y.begin(), y.end(), x)) throw InvalidInput("x must not be in the conditioning set");
    if (y.empty()) return 0.0;
    std::vector<Vertex> xy = y;
    xy.push_back(x);
    const Vertex xs[] = {x};
    const double mi = entropy(source, xs) + entropy(source, y) - entropy(source, xy);
    return std::max(mi, 0.0);
}

/// Sum of single-variable entropies minus the joint entropy.
template <DistributionSource S>
double total_correlation(const S& source, std::span<const Vertex> vars) {
    const auto set = detail::as_set(vars);
    if (set.empty()) throw InvalidInput("total correlation needs at least one variable");
    double sum = 0.0;
    for (Vertex v : set) {
        const Vertex one[] = {v};
        sum += entropy(source, one);
    }
    return std::max(sum - entropy(source, set), 0.0);
}

/// D(p || q) in bits; +inf when p has mass where q has none.
inline double kl_divergence(const JointTable& p, const JointTable& q) {
    if (p.vars() != q.vars() || p.alphabets() != q.alphabets()) {
        throw InvalidInput("KL divergence needs tables over the same variables and alphabets");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p.probs()[i];
        if (pi <= 0.0) continue;
        const double qi = q.probs()[i];
        if (qi <= 0.0) return std::numeric_limits<double>::infinity();
        d += pi * std::log2(pi / qi);
    }
    return std::max(d, 0.0);
}

namespace detail {

template <DistributionSource S>
std::vector<int> alphabets_of(const S& source, int n) {
    std::vector<int> alph(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) alph[v] = source.alphabet(v);
    return alph;
}

// Evaluates prod_v cond_v(x_v | x_parents) over the full assignment space of vars 0..n-1.
// cond[j] holds rows indexed by parent assignment (in `parents[j]` order), alphabet entries each.
inline JointTable product_of_conditionals(const std::vector<int>& alphabets, const std::vector<Vertex>& vertex,
                                          const std::vector<std::vector<Vertex>>& parents,
                                          const std::vector<std::vector<double>>& cond) {
    const std::size_t cells = cell_count(alphabets, kMaxDenseCells);
    const std::size_t n = alphabets.size();
    std::vector<double> probs(cells, 0.0);
    std::vector<int> digits(n, 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        double p = 1.0;
        for (std::size_t j = 0; j < vertex.size() && p > 0.0; ++j) {
            std::size_t row = 0;
            for (Vertex u : parents[j]) row = row * static_cast<std::size_t>(alphabets[u]) + static_cast<std::size_t>(digits[u]);
            const Vertex v = vertex[j];
            p *= cond[j][row * static_cast<std::size_t>(alphabets[v]) + static_cast<std::size_t>(digits[v])];
        }
        probs[cell] = p;
        for (std::size_t i = n; i-- > 0;) {
            if (++digits[i] < alphabets[i]) break;
            digits[i] = 0;
        }
    }
    std::vector<Vertex> vars(n);
    std::iota(vars.begin(), vars.end(), 0);
    return JointTable(std::move(vars), alphabets, std::move(probs));
}

} // namespace detail

/// P_G(x) = prod_i P(x_i | precursors(x_i)), conditionals estimated from `source`.
/// An unseen conditioning context falls back to the marginal of the vertex.
template <DistributionSource S>
JointTable markov_ktree_distribution(const KTree& t, const S& source) {
    if (auto r = validate_ktree(t); !r.ok()) throw InvalidInput("invalid k-tree: " + *r.violation);
    if (source.n_vars() < t.n) throw InvalidInput("distribution covers fewer variables than the k-tree");
    const auto alphabets = detail::alphabets_of(source, t.n);
    detail::cell_count(alphabets, kMaxDenseCells);

    std::vector<Vertex> vertex;
    std::vector<std::vector<Vertex>> parents;
    std::vector<std::vector<double>> cond;
    for (const auto& step : t.creation_order) {
        const Vertex v = step.vertex;
        const std::size_t a = static_cast<std::size_t>(alphabets[v]);
        std::vector<Vertex> family = step.precursors;
        family.push_back(v);
        auto joint = source.marginal(family);
        const Vertex self[] = {v};
        const auto single = source.marginal(self);
        for (std::size_t row = 0; row * a < joint.size(); ++row) {
            double total = 0.0;
            for (std::size_t x = 0; x < a; ++x) total += joint[row * a + x];
            for (std::size_t x = 0; x < a; ++x) {
                joint[row * a + x] = total > 0.0 ? joint[row * a + x] / total : single[x];
            }
        }
        vertex.push_back(v);
        parents.push_back(step.precursors);
        cond.push_back(std::move(joint));
    }
    return detail::product_of_conditionals(alphabets, vertex, parents, cond);
}

/// Distribution of one vertex given its precursors; probs has one row of `alphabet`
/// entries per parent assignment (parents in listed order, last fastest).
struct ConditionalTable {
    Vertex vertex = 0;
    std::vector<Vertex> parents;
    int alphabet = 2;
    std::vector<double> probs;
};

namespace detail {

inline std::vector<int> check_tables(const KTree& t, const std::vector<ConditionalTable>& tables) {
    if (tables.size() != t.creation_order.size()) throw InvalidInput("need one conditional table per vertex");
    std::vector<int> alphabets(static_cast<std::size_t>(t.n), 0);
    for (std::size_t j = 0; j < tables.size(); ++j) {
        const auto& tab = tables[j];
        const auto& step = t.creation_order[j];
        if (tab.vertex != step.vertex || tab.parents != step.precursors) {
            throw InvalidInput("conditional table " + std::to_string(j) + " does not follow the creation order");
        }
        if (tab.alphabet < 1) throw InvalidInput("alphabet size must be positive");
        std::size_t rows = 1;
        for (Vertex p : tab.parents) rows *= static_cast<std::size_t>(alphabets[p]);
        if (tab.probs.size() != rows * static_cast<std::size_t>(tab.alphabet)) {
            throw InvalidInput("conditional table for vertex " + std::to_string(tab.vertex) + " has wrong size");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            double total = 0.0;
            for (int x = 0; x < tab.alphabet; ++x) {
                const double p = tab.probs[r * static_cast<std::size_t>(tab.alphabet) + static_cast<std::size_t>(x)];
                if (!(p >= 0.0)) throw InvalidInput("negative probability in conditional table");
                total += p;
            }
            if (std::abs(total - 1.0) > kProbabilityTolerance) {
                throw InvalidInput("row " + std::to_string(r) + " of the table for vertex " + std::to_string(tab.vertex) +
                                   " sums to " + std::to_string(total));
            }
        }
        alphabets[tab.vertex] = tab.alphabet;
    }
    return alphabets;
}

} // namespace detail

/// Exact joint defined by conditional tables along a creation order.
inline JointTable markov_ktree_joint(const KTree& t, const std::vector<ConditionalTable>& tables) {
    const auto alphabets = detail::check_tables(t, tables);
    std::vector<Vertex> vertex;
    std::vector<std::vector<Vertex>> parents;
    std::vector<std::vector<double>> cond;
    for (const auto& tab : tables) {
        vertex.push_back(tab.vertex);
        parents.push_back(tab.parents);
        cond.push_back(tab.probs);
    }
    return detail::product_of_conditionals(alphabets, vertex, parents, cond);
}

/// m i.i.d. ancestral samples in creation order; deterministic in `seed`.
inline SampleMatrix sample_markov_ktree(const KTree& t, const std::vector<ConditionalTable>& tables, std::size_t m,
                                        std::uint64_t seed) {
    if (m == 0) throw InvalidInput("need at least one sample");
    const auto alphabets = detail::check_tables(t, tables);
    Rng rng(seed);
    std::vector<std::vector<int>> rows(m, std::vector<int>(static_cast<std::size_t>(t.n), 0));
    for (auto& row : rows) {
        for (const auto& tab : tables) {
            std::size_t r = 0;
            for (Vertex p : tab.parents) r = r * static_cast<std::size_t>(alphabets[p]) + static_cast<std::size_t>(row[p]);
            const double* dist = tab.probs.data() + r * static_cast<std::size_t>(tab.alphabet);
            double u = rng.uniform();
            int symbol = -1;
            for (int x = 0; x < tab.alphabet; ++x) {
                if (dist[x] <= 0.0) continue;
                symbol = x;
                if (u < dist[x]) break;
                u -= dist[x];
            }
            row[tab.vertex] = symbol;
        }
    }
    return SampleMatrix(alphabets, std::move(rows));
}

} // namespace mskt
