#pragma once

// File formats: graph JSON, score JSON, joint-table JSON, solve-result JSON, samples CSV, DOT.

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mskt/errors.hpp"
#include "mskt/graph.hpp"
#include "mskt/info.hpp"
#include "mskt/score.hpp"
#include "mskt/solver.hpp"

namespace mskt::io {

using nlohmann::json;

namespace detail {

inline std::vector<int> parse_int_list(const std::string& text, char sep) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, sep)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw InvalidInput("cannot parse '" + part + "' as an integer in key '" + text + "'");
        }
    }
    return out;
}

inline std::string join(std::span<const Vertex> vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(vs[i]);
    }
    return s;
}

inline std::vector<Edge> parse_edges(const json& j, const char* key) {
    if (!j.is_array()) throw InvalidInput(std::string("\"") + key + "\" must be an array of [u,v] pairs");
    std::vector<Edge> edges;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
            throw InvalidInput(std::string("\"") + key + "\" entries must be [u,v] integer pairs");
        }
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return edges;
}

inline json edges_json(const std::vector<Edge>& edges) {
    json out = json::array();
    for (Edge e : edges) out.push_back({e.u, e.v});
    return out;
}

template <class T>
T get_required(const json& j, const char* key) {
    if (!j.contains(key)) throw InvalidInput(std::string("missing required key \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("bad value for \"") + key + "\": " + e.what());
    }
}

} // namespace detail

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write " + path);
    out << text;
}

struct GraphFile {
    UndirectedGraph graph;
    std::optional<BackboneTree> backbone;

    const BackboneTree& require_backbone() const {
        if (!backbone) throw InvalidInput("graph file is missing the \"backbone\" key");
        return *backbone;
    }
};

/// {"n", "edges", "weights": {"u,v": w} (optional), "backbone" (optional), "degree_bound" (optional,
/// defaults to the backbone's maximum degree)}.
inline GraphFile parse_graph(const json& j) {
    if (!j.is_object()) throw InvalidInput("graph JSON must be an object");
    const int n = detail::get_required<int>(j, "n");
    if (!j.contains("edges")) throw InvalidInput("missing required key \"edges\"");
    auto edges = detail::parse_edges(j.at("edges"), "edges");
    std::map<Edge, double> weights;
    if (j.contains("weights")) {
        if (!j.at("weights").is_object()) throw InvalidInput("\"weights\" must be an object keyed by \"u,v\"");
        for (const auto& [key, value] : j.at("weights").items()) {
            const auto uv = detail::parse_int_list(key, ',');
            if (uv.size() != 2 || !value.is_number()) throw InvalidInput("bad weight entry \"" + key + "\"");
            weights[make_edge(uv[0], uv[1])] = value.get<double>();
        }
    }
    GraphFile file{UndirectedGraph(n, std::move(edges), std::move(weights)), std::nullopt};
    if (j.contains("backbone")) {
        auto bb = detail::parse_edges(j.at("backbone"), "backbone");
        BackboneTree probe(n, bb, 1);
        const int d = j.contains("degree_bound") ? detail::get_required<int>(j, "degree_bound") : std::max(1, probe.max_degree());
        file.backbone = BackboneTree(n, std::move(bb), d);
    }
    return file;
}

inline json graph_to_json(const UndirectedGraph& g, const BackboneTree* h) {
    json j;
    j["n"] = g.n();
    j["edges"] = detail::edges_json(g.edges());
    if (!g.weights().empty()) {
        json w = json::object();
        for (const auto& [e, x] : g.weights()) w[std::to_string(e.u) + "," + std::to_string(e.v)] = x;
        j["weights"] = std::move(w);
    }
    if (h) {
        j["backbone"] = detail::edges_json(h->edges());
        j["degree_bound"] = h->degree_bound();
    }
    return j;
}

/// {"k", "root": {"v0,v1,..": s}, "pivot": {"w|c0,c1,..": s}}; absent keys are forbidden.
inline TableScoreOracle parse_scores(const json& j) {
    if (!j.is_object()) throw InvalidInput("score JSON must be an object");
    const int k = detail::get_required<int>(j, "k");
    std::map<Clique, double> roots;
    std::map<PivotKey, double> pivots;
    if (j.contains("root")) {
        for (const auto& [key, value] : j.at("root").items()) {
            if (!value.is_number()) throw InvalidInput("root score \"" + key + "\" is not a number");
            roots[Clique(detail::parse_int_list(key, ','))] = value.get<double>();
        }
    }
    if (j.contains("pivot")) {
        for (const auto& [key, value] : j.at("pivot").items()) {
            const auto bar = key.find('|');
            if (bar == std::string::npos || !value.is_number()) throw InvalidInput("bad pivot score entry \"" + key + "\"");
            const auto w = detail::parse_int_list(key.substr(0, bar), ',');
            if (w.size() != 1) throw InvalidInput("bad pivot in \"" + key + "\"");
            pivots[PivotKey{w[0], Clique(detail::parse_int_list(key.substr(bar + 1), ','))}] = value.get<double>();
        }
    }
    return TableScoreOracle(k, std::move(roots), std::move(pivots));
}

inline json scores_to_json(const TableScoreOracle& f) {
    json root = json::object();
    for (const auto& [c, s] : f.roots()) root[detail::join(c.members())] = s;
    json pivot = json::object();
    for (const auto& [key, s] : f.pivots()) pivot[std::to_string(key.pivot) + "|" + detail::join(key.base.members())] = s;
    return json{{"k", f.k()}, {"root", std::move(root)}, {"pivot", std::move(pivot)}};
}

/// {"vars": [...], "alphabets": [...], "probs": {"a0,a1,...": p}}; missing cells are 0.
inline JointTable parse_joint(const json& j) {
    const auto vars = detail::get_required<std::vector<int>>(j, "vars");
    const auto alphabets = detail::get_required<std::vector<int>>(j, "alphabets");
    if (vars.size() != alphabets.size()) throw InvalidInput("\"vars\" and \"alphabets\" differ in length");
    std::size_t cells = 1;
    for (int a : alphabets) {
        if (a < 1) throw InvalidInput("alphabet size must be positive");
        cells *= static_cast<std::size_t>(a);
        if (cells > (std::size_t{1} << 26)) throw InstanceTooLarge("joint table is too large");
    }
    std::vector<double> probs(cells, 0.0);
    if (!j.contains("probs") || !j.at("probs").is_object()) throw InvalidInput("missing required key \"probs\"");
    for (const auto& [key, value] : j.at("probs").items()) {
        const auto a = detail::parse_int_list(key, ',');
        if (a.size() != vars.size() || !value.is_number()) throw InvalidInput("bad probability entry \"" + key + "\"");
        std::size_t c = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < 0 || a[i] >= alphabets[i]) throw InvalidInput("symbol out of range in \"" + key + "\"");
            c = c * static_cast<std::size_t>(alphabets[i]) + static_cast<std::size_t>(a[i]);
        }
        probs[c] = value.get<double>();
    }
    return JointTable(vars, alphabets, std::move(probs));
}

inline json joint_to_json(const JointTable& p) {
    json probs = json::object();
    for (std::size_t c = 0; c < p.size(); ++c) {
        if (p.probs()[c] == 0.0) continue;
        const auto a = p.decode(c);
        std::string key;
        for (std::size_t i = 0; i < a.size(); ++i) key += (i ? "," : "") + std::to_string(a[i]);
        probs[key] = p.probs()[c];
    }
    return json{{"vars", p.vars()}, {"alphabets", p.alphabets()}, {"probs", std::move(probs)}};
}

/// Header "x0,...,x{n-1}", one integer symbol per cell. Alphabets are inferred as max + 1 (>= 2).
inline SampleMatrix read_samples_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("samples CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] != "x" + std::to_string(i)) {
            throw InvalidInput("samples CSV header column " + std::to_string(i) + " is '" + header[i] + "', expected 'x" +
                               std::to_string(i) + "'");
        }
    }
    std::vector<std::vector<int>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<int> row;
        try {
            row = detail::parse_int_list(line, ',');
        } catch (const InvalidInput& e) {
            throw InvalidInput("samples CSV line " + std::to_string(line_no) + ": " + e.what());
        }
        if (row.size() != header.size()) {
            throw InvalidInput("samples CSV line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                               " cells, expected " + std::to_string(header.size()));
        }
        rows.push_back(std::move(row));
    }
    return SampleMatrix::infer(std::move(rows));
}

inline SampleMatrix read_samples_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    return read_samples_csv(in);
}

inline void write_samples_csv(std::ostream& out, const SampleMatrix& s) {
    for (int v = 0; v < s.n_vars(); ++v) out << (v ? "," : "") << 'x' << v;
    out << '\n';
    for (std::size_t r = 0; r < s.n_samples(); ++r) {
        for (int v = 0; v < s.n_vars(); ++v) out << (v ? "," : "") << s.at(r, v);
        out << '\n';
    }
}

/// {"k", "n", "score", "root_score", "root": [...], "cliques": [{"pivot", "base", "score"}], "edges"}.
inline json result_to_json(const SolveResult& r) {
    json cliques = json::array();
    for (const auto& c : r.cliques) cliques.push_back({{"pivot", c.pivot}, {"base", c.base.vec()}, {"score", c.score}});
    return json{{"k", r.ktree.k},
                {"n", r.ktree.n},
                {"score", r.score},
                {"root_score", r.root_score_component},
                {"root", r.ktree.root_clique.vec()},
                {"cliques", std::move(cliques)},
                {"edges", detail::edges_json(r.ktree.edges)}};
}

/// Same layout without scores, for k-trees that were not produced by the solver.
inline json ktree_to_json(const KTree& t) {
    json cliques = json::array();
    for (std::size_t j = static_cast<std::size_t>(t.k) + 1; j < t.creation_order.size(); ++j) {
        cliques.push_back({{"pivot", t.creation_order[j].vertex}, {"base", t.creation_order[j].precursors}});
    }
    return json{{"k", t.k},
                {"n", t.n},
                {"root", t.root_clique.vec()},
                {"cliques", std::move(cliques)},
                {"edges", detail::edges_json(t.edges)}};
}

/// Rebuilds the k-tree of a result (or k-tree) JSON from its root and clique list.
inline KTree ktree_from_json(const json& j) {
    const int k = detail::get_required<int>(j, "k");
    const auto root = detail::get_required<std::vector<int>>(j, "root");
    if (!j.contains("cliques") || !j.at("cliques").is_array()) throw InvalidInput("missing required key \"cliques\"");
    std::vector<CreationStep> order;
    const Clique rc(root);
    for (std::size_t i = 0; i < rc.size(); ++i) {
        CreationStep step{rc[i], {}};
        for (std::size_t p = 0; p < i; ++p) step.precursors.push_back(rc[p]);
        order.push_back(std::move(step));
    }
    for (const auto& c : j.at("cliques")) {
        auto base = detail::get_required<std::vector<int>>(c, "base");
        std::sort(base.begin(), base.end());
        order.push_back({detail::get_required<int>(c, "pivot"), std::move(base)});
    }
    const int n = j.contains("n") ? detail::get_required<int>(j, "n") : static_cast<int>(order.size());
    return make_ktree(n, k, std::move(order));
}

/// Backbone edges bold, the remaining k-tree edges plain.
inline std::string to_dot(const KTree& t, const BackboneTree* h) {
    std::ostringstream out;
    out << "graph ktree {\n";
    for (Vertex v = 0; v < t.n; ++v) out << "  " << v << ";\n";
    for (Edge e : t.edges) {
        out << "  " << e.u << " -- " << e.v;
        if (h && h->has_edge(e.u, e.v)) out << " [style=bold]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace mskt::io
