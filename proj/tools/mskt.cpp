// mskt: command-line front end. Exit codes: 0 success, 1 usage or data error, 2 infeasible.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mskt/generate.hpp"
#include "mskt/io.hpp"
#include "mskt/oracle.hpp"
#include "mskt/reduction.hpp"
#include "mskt/solver.hpp"

namespace {

using namespace mskt;

struct Flags {
    std::string graph;
    std::string samples;
    std::string scores;
    std::string joint;
    std::string result;
    std::string out;
    std::string format = "json";
    int k = 1;
    int threads = 1;
    std::uint64_t seed = 0;
    int n = 10;
    int degree = 3;
    std::size_t sample_count = 10000;
    int alphabet = 2;
    double alpha = 1.0;
    bool strong = false;
};

void emit(const Flags& f, const std::string& text) {
    if (f.out.empty()) {
        std::cout << text;
    } else {
        io::write_text_file(f.out, text);
    }
}

std::string render(const Flags& f, const KTree& t, const BackboneTree* h, const io::json& doc) {
    if (f.format == "dot") return io::to_dot(t, h);
    return doc.dump(2) + "\n";
}

void check_k(int k) {
    if (k < 1) throw InvalidInput("--k must be at least 1");
}

int cmd_fit(const Flags& f) {
    check_k(f.k);
    const auto gf = io::parse_graph(io::read_json_file(f.graph));
    auto samples = io::read_samples_file(f.samples);
    if (samples.n_vars() != gf.graph.n()) {
        throw InvalidInput("samples have " + std::to_string(samples.n_vars()) + " variables, graph has " +
                           std::to_string(gf.graph.n()));
    }
    const MiScoreOracle<SampleMatrix> mi(std::move(samples), gf.graph);
    emit(f, io::scores_to_json(materialize(mi, gf.graph, f.k)).dump(2) + "\n");
    return 0;
}

int cmd_solve(const Flags& f) {
    check_k(f.k);
    const auto gf = io::parse_graph(io::read_json_file(f.graph));
    const BackboneTree& h = gf.require_backbone();
    std::optional<TableScoreOracle> table;
    std::optional<MiScoreOracle<SampleMatrix>> mi;
    const ScoreOracle* oracle = nullptr;
    if (!f.scores.empty() == !f.samples.empty()) throw InvalidInput("solve needs exactly one of --scores and --samples");
    if (!f.scores.empty()) {
        table.emplace(io::parse_scores(io::read_json_file(f.scores)));
        if (table->k() != f.k) {
            throw InvalidInput("score file is for k=" + std::to_string(table->k()) + ", but --k is " + std::to_string(f.k));
        }
        oracle = &*table;
    } else {
        auto samples = io::read_samples_file(f.samples);
        if (samples.n_vars() != gf.graph.n()) throw InvalidInput("samples and graph disagree on the variable count");
        mi.emplace(std::move(samples), gf.graph);
        oracle = &*mi;
    }
    const SolveResult r = solve_retaining_mskt(gf.graph, h, f.k, *oracle, SolveOptions{f.threads});
    const std::string doc = render(f, r.ktree, &h, io::result_to_json(r));
    if (f.out.empty()) {
        std::cout << doc;
    } else {
        io::write_text_file(f.out, doc);
        std::printf("score %.17g\nroot %s\n", r.score, to_string(r.ktree.root_clique).c_str());
    }
    return 0;
}

int cmd_chowliu(const Flags& f) {
    if (!f.samples.empty() == !f.joint.empty()) throw InvalidInput("chowliu needs exactly one of --samples and --joint");
    const KTree t = f.samples.empty() ? chow_liu(io::parse_joint(io::read_json_file(f.joint)))
                                      : chow_liu(io::read_samples_file(f.samples));
    emit(f, render(f, t, nullptr, io::ktree_to_json(t)));
    return 0;
}

int cmd_kl(const Flags& f) {
    const JointTable p = io::parse_joint(io::read_json_file(f.joint));
    const KTree t = io::ktree_from_json(io::read_json_file(f.result));
    std::printf("%.6f\n", kl_divergence(p, markov_ktree_distribution(t, p)));
    return 0;
}

int cmd_oracle(const Flags& f) {
    check_k(f.k);
    const auto gf = io::parse_graph(io::read_json_file(f.graph));
    const BackboneTree& h = gf.require_backbone();
    const auto report = enumerate_retaining_ktrees(gf.graph, h, f.k);
    std::printf("instances %zu\n", report.instances.size());
    if (f.scores.empty() && f.samples.empty()) return report.instances.empty() ? 2 : 0;
    std::optional<TableScoreOracle> table;
    if (!f.scores.empty()) {
        table.emplace(io::parse_scores(io::read_json_file(f.scores)));
    } else {
        const MiScoreOracle<SampleMatrix> mi(io::read_samples_file(f.samples), gf.graph);
        table.emplace(materialize(mi, gf.graph, f.k));
    }
    const auto [best, score] = brute_max_score(report, h, *table);
    std::printf("score %.17g\nroot %s\n", score, to_string(best.root_clique).c_str());
    if (!f.out.empty()) {
        io::write_text_file(f.out, render(f, best, &h, io::ktree_to_json(best)));
    }
    return 0;
}

int cmd_reduce_clique(const Flags& f) {
    const auto gf = io::parse_graph(io::read_json_file(f.graph));
    const HMsktInstance inst = reduce_kclique(gf.graph, f.k);
    if (!f.out.empty()) {
        auto doc = io::graph_to_json(inst.gprime, &inst.h);
        doc["k"] = inst.kprime;
        doc["sigma"] = inst.sigma;
        io::write_text_file(f.out, doc.dump(2) + "\n");
    }
    const bool yes = decide_kclique(gf.graph, f.k, SolveOptions{f.threads});
    std::printf("%s\n", yes ? "true" : "false");
    return 0;
}

int cmd_gen(const Flags& f) {
    if (f.out.empty()) throw InvalidInput("gen needs --out DIR");
    TableStyle style;
    style.alphabet = f.alphabet;
    style.alpha = f.alpha;
    style.strong = f.strong;
    const auto inst = generate_instance(f.n, f.k, f.degree, f.sample_count, f.seed, style);
    std::filesystem::create_directories(f.out);
    const std::filesystem::path dir(f.out);
    io::write_text_file((dir / "graph.json").string(), io::graph_to_json(inst.graph, &inst.backbone).dump(2) + "\n");
    std::ostringstream csv;
    io::write_samples_csv(csv, inst.samples);
    io::write_text_file((dir / "samples.csv").string(), csv.str());
    auto truth = io::ktree_to_json(inst.truth);
    io::json tables = io::json::array();
    for (const auto& t : inst.tables) {
        tables.push_back({{"vertex", t.vertex}, {"parents", t.parents}, {"alphabet", t.alphabet}, {"probs", t.probs}});
    }
    truth["tables"] = std::move(tables);
    io::write_text_file((dir / "truth.json").string(), truth.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximum spanning k-trees that retain a backbone tree"};
    app.require_subcommand(1);
    Flags f;
    const std::vector<std::string> formats{"json", "dot"};

    auto* fit = app.add_subcommand("fit", "Mutual-information clique scores from samples");
    fit->add_option("--samples", f.samples, "samples CSV")->required();
    fit->add_option("--graph", f.graph, "graph JSON")->required();
    fit->add_option("--k", f.k, "tree width")->required();
    fit->add_option("--out", f.out, "output scores JSON (default stdout)");

    auto* solve = app.add_subcommand("solve", "Best backbone-retaining spanning k-tree");
    solve->add_option("--graph", f.graph, "graph JSON with backbone")->required();
    solve->add_option("--scores", f.scores, "scores JSON");
    solve->add_option("--samples", f.samples, "samples CSV (mutual-information scores)");
    solve->add_option("--k", f.k, "tree width")->required();
    solve->add_option("--out", f.out, "output file (default stdout)");
    solve->add_option("--format", f.format, "json or dot")->check(CLI::IsMember(formats));
    solve->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);

    auto* chowliu = app.add_subcommand("chowliu", "Chow-Liu tree");
    chowliu->add_option("--samples", f.samples, "samples CSV");
    chowliu->add_option("--joint", f.joint, "joint table JSON");
    chowliu->add_option("--out", f.out, "output file (default stdout)");
    chowliu->add_option("--format", f.format, "json or dot")->check(CLI::IsMember(formats));

    auto* kl = app.add_subcommand("kl", "KL divergence from a joint table to a k-tree approximation");
    kl->add_option("--joint", f.joint, "joint table JSON")->required();
    kl->add_option("--result", f.result, "solve result or k-tree JSON")->required();

    auto* oracle = app.add_subcommand("oracle", "Exhaustive enumeration of retaining k-trees");
    oracle->add_option("--graph", f.graph, "graph JSON with backbone")->required();
    oracle->add_option("--k", f.k, "tree width")->required();
    oracle->add_option("--scores", f.scores, "scores JSON");
    oracle->add_option("--samples", f.samples, "samples CSV");
    oracle->add_option("--out", f.out, "best k-tree output");
    oracle->add_option("--format", f.format, "json or dot")->check(CLI::IsMember(formats));

    auto* reduce = app.add_subcommand("reduce-clique", "Decide k-Clique through the retaining solver");
    reduce->add_option("--graph", f.graph, "graph JSON")->required();
    reduce->add_option("--k", f.k, "clique size")->required();
    reduce->add_option("--out", f.out, "write the reduced instance");
    reduce->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);

    auto* gen = app.add_subcommand("gen", "Random ground-truth instance");
    gen->add_option("--n", f.n, "vertices")->required();
    gen->add_option("--k", f.k, "tree width")->required();
    gen->add_option("--degree", f.degree, "backbone degree bound");
    gen->add_option("--samples", f.sample_count, "number of samples");
    gen->add_option("--seed", f.seed, "seed");
    gen->add_option("--alphabet", f.alphabet, "symbols per variable");
    gen->add_option("--alpha", f.alpha, "Dirichlet concentration of flat tables");
    gen->add_flag("--strong", f.strong, "low-entropy tables");
    gen->add_option("--out", f.out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (fit->parsed()) return cmd_fit(f);
        if (solve->parsed()) return cmd_solve(f);
        if (chowliu->parsed()) return cmd_chowliu(f);
        if (kl->parsed()) return cmd_kl(f);
        if (oracle->parsed()) return cmd_oracle(f);
        if (reduce->parsed()) return cmd_reduce_clique(f);
        if (gen->parsed()) return cmd_gen(f);
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
