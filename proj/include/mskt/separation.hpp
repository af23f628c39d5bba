#pragma once

// Components of the backbone left after removing a separator clique.

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "mskt/errors.hpp"
#include "mskt/graph.hpp"

namespace mskt {

/// Canonical component ids: the smallest vertex of each component, kept sorted.
using IdSet = std::vector<Vertex>;

struct ComponentMap {
    Clique separator;
    std::vector<std::vector<Vertex>> components;  // each sorted, ordered by smallest vertex
    std::vector<int> component_of;                // -1 for separator vertices

    std::size_t size() const noexcept { return components.size(); }

    IdSet ids() const {
        IdSet out;
        out.reserve(components.size());
        for (const auto& c : components) out.push_back(c.front());
        return out;
    }

    int index_of_id(Vertex id) const {
        if (id < 0 || id >= static_cast<int>(component_of.size())) return -1;
        const int c = component_of[id];
        return (c >= 0 && components[c].front() == id) ? c : -1;
    }

    const std::vector<Vertex>& component(Vertex id) const {
        const int c = index_of_id(id);
        if (c < 0) throw InvalidInput("no component with id " + std::to_string(id));
        return components[c];
    }
};

inline ComponentMap separate(const BackboneTree& h, const Clique& sep) {
    const int n = h.n();
    ComponentMap map;
    map.separator = sep;
    map.component_of.assign(static_cast<std::size_t>(n), -2);
    for (Vertex s : sep) {
        if (s < 0 || s >= n) throw InvalidInput("separator vertex " + std::to_string(s) + " out of range");
        map.component_of[s] = -1;
    }
    std::vector<Vertex> stack;
    for (Vertex start = 0; start < n; ++start) {
        if (map.component_of[start] != -2) continue;
        const int id = static_cast<int>(map.components.size());
        std::vector<Vertex> members;
        map.component_of[start] = id;
        stack.assign(1, start);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (Vertex w : h.neighbors(v)) {
                if (map.component_of[w] == -2) {
                    map.component_of[w] = id;
                    stack.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        map.components.push_back(std::move(members));
    }
    return map;
}

/// Most components a tree of maximum degree d can split into when k+1 vertices are removed.
constexpr int component_count_bound(int d, int k) noexcept { return d * (k + 1) - k; }

/// True iff `drop` has no backbone neighbour inside `region`. A backbone edge between the
/// dropped vertex and the region could never be created further down.
inline bool feasible_drop(const BackboneTree& h, const Clique& parent, Vertex drop, std::span<const Vertex> region) {
    if (!parent.contains(drop)) throw InvalidInput("dropped vertex " + std::to_string(drop) + " is not in " + to_string(parent));
    for (Vertex w : h.neighbors(drop)) {
        if (std::find(region.begin(), region.end(), w) != region.end()) return false;
    }
    return true;
}

/// Ids of the components of H - child lying inside region \ {pivot}. Throws
/// InconsistentPartition if those components do not tile region \ {pivot} exactly.
inline IdSet child_id_set(const BackboneTree& h, const Clique& child, std::span<const Vertex> region, Vertex pivot) {
    if (!child.contains(pivot) || std::find(region.begin(), region.end(), pivot) == region.end()) {
        throw InvalidInput("pivot " + std::to_string(pivot) + " must lie in both the child clique and the region");
    }
    std::vector<char> wanted(static_cast<std::size_t>(h.n()), 0);
    std::size_t remaining = 0;
    for (Vertex v : region) {
        if (v != pivot && !wanted[v]) {
            wanted[v] = 1;
            ++remaining;
        }
    }
    const ComponentMap map = separate(h, child);
    IdSet ids;
    std::size_t covered = 0;
    for (const auto& comp : map.components) {
        const auto inside = static_cast<std::size_t>(std::count_if(comp.begin(), comp.end(), [&](Vertex v) { return wanted[v] != 0; }));
        if (inside == 0) continue;
        if (inside != comp.size()) {
            throw InconsistentPartition("component " + std::to_string(comp.front()) + " of H - " + to_string(child) +
                                        " straddles the region boundary");
        }
        ids.push_back(comp.front());
        covered += inside;
    }
    if (covered != remaining) {
        throw InconsistentPartition("components of H - " + to_string(child) + " do not cover the region");
    }
    return ids;
}

} // namespace mskt
