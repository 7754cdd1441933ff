// Command-line surface: generators, embeddings, verification suites.
// Exit codes: 0 ok, 1 violation found, 2 bad input, 3 budget exceeded.

#include "mge/diamond_analysis.hpp"
#include "mge/embedding.hpp"
#include "mge/families.hpp"
#include "mge/json_io.hpp"
#include "mge/metric.hpp"
#include "mge/tol.hpp"
#include "mge/trees.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace mge;

struct Globals {
    double tolerance = kRelTol;
    bool rational = false;
    int threads = 1;
    std::uint64_t budget = kDefaultNodeBudget;
};

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

nlohmann::json report_json(const DistortionReport& r) {
    return {{"lip", r.lip},
            {"lip_inv", r.lip_inv},
            {"distortion", r.distortion},
            {"witness_expand", {r.witness_expand.first, r.witness_expand.second}},
            {"witness_contract", {r.witness_contract.first, r.witness_contract.second}}};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
}

void emit_graph(const GraphFile& f, const std::string& out_path, bool dot,
                bool rational_weights, const std::vector<Rat>* exact) {
    if (!out_path.empty())
        save_graph(f, out_path, rational_weights, exact);
    if (dot)
        std::cout << graph_to_dot(f.graph);
    else if (out_path.empty())
        std::cout << graph_to_json(f, rational_weights, exact).dump(2) << "\n";
}

// "family:param" block descriptors for gen glue / gen l1prod.
MetricSpace block_metric(const std::string& desc, int threads) {
    auto pos = desc.find(':');
    std::string fam = desc.substr(0, pos);
    int arg = pos == std::string::npos ? 1 : std::stoi(desc.substr(pos + 1));
    WeightedGraph g;
    if (fam == "diamond")
        g = build_diamond(arg).graph;
    else if (fam == "cycle")
        g = build_cycle(arg);
    else if (fam == "path")
        g = build_path(arg);
    else if (fam == "tree")
        g = build_binary_tree(arg);
    else
        throw std::invalid_argument("unknown block family: " + fam);
    return shortest_path_metric(g, threads);
}

int exit_for(const CheckReport& rep) {
    if (!rep.certified) return 3;
    return rep.violations.empty() ? 0 : 1;
}

int finish(CheckReport rep, double t0) {
    rep.runtime_ms = now_ms() - t0;
    std::cout << rep.to_json().dump(2) << "\n";
    return exit_for(rep);
}

// ---- verify suites ------------------------------------------------------

CheckReport suite_entropy(int level, int p, const Globals& g) {
    auto [graph, st] = build_diamond(level);
    auto m = shortest_path_metric(graph, g.threads);
    EntropyOptions opts;
    opts.budget = g.budget;
    return p >= 0 ? entropy_check(st, m, p, opts) : entropy_check_all(st, m, opts);
}

CheckReport suite_generations(int level, const Globals& g) {
    auto [graph, st] = build_diamond(level);
    auto m = shortest_path_metric(graph, g.threads);
    CheckReport rep;
    rep.check = "generations";
    rep.parameters = {{"level", level}};
    for (int r = 1; r <= level; ++r) {
        auto a = verify_generation_neighborhood(st, m, r);
        auto b = verify_generation_components(st, graph, r);
        for (auto& v : a.violations) rep.violations.push_back(v);
        for (auto& v : b.violations) rep.violations.push_back(v);
        for (auto& t : a.tight_cases) rep.tight_cases.push_back(t);
        for (auto& t : b.tight_cases) rep.tight_cases.push_back(t);
    }
    return rep;
}

CheckReport suite_exits(int level) {
    auto [graph, st] = build_diamond(level);
    CheckReport rep;
    rep.check = "exits";
    rep.parameters = {{"level", level}};
    for (size_t node = 1; node < st.subdiamonds.size(); ++node)
        if (!exits_disconnect(st, graph, static_cast<int>(node)))
            rep.violations.push_back({{"subdiamond", node}});
    return rep;
}

CheckReport suite_claim42(int level, double eps, bool all_paths, const Globals& g) {
    auto [graph, st] = build_weighted_diamond(level, eps);
    return claim_two_edges_per_class(graph, st, all_paths, g.budget);
}

CheckReport suite_rr(int cycle_n, int min_tree, int max_tree, const Globals& g) {
    CheckReport rep;
    rep.check = "rr";
    rep.parameters = {{"cycle", cycle_n}, {"min_tree", min_tree}, {"max_tree", max_tree}};
    double bound = cycle_n / 3.0 - 1.0;
    auto mc = shortest_path_metric(build_cycle(cycle_n));
    for (int n = min_tree; n <= max_tree; ++n) {
        auto trees = all_free_trees(n);
        for (size_t t = 0; t < trees.size(); ++t) {
            if (trees[t].n < cycle_n) continue;
            auto mt = shortest_path_metric(trees[t]);
            auto res = min_distortion(mc, mt, g.budget);
            if (!res.certified) rep.certified = false;
            if (res.value < bound && !approx_eq(res.value, bound))
                rep.violations.push_back(
                    {{"tree_order", n}, {"tree_index", t}, {"value", res.value}});
            if (approx_eq(res.value, bound))
                rep.tight_cases.push_back(
                    {{"tree_order", n}, {"tree_index", t}, {"value", res.value}});
        }
    }
    return rep;
}

CheckReport suite_edgeiso(int level, double eps, const Globals& g,
                          const std::string& eps_rat) {
    auto [graph, st] = build_weighted_diamond(level, eps);
    CheckReport rep;
    rep.check = "edgeiso";
    rep.parameters = {{"level", level}, {"eps", eps}, {"rational", g.rational}};
    if (g.rational) {
        Rat re = parse_rational(eps_rat.empty() ? "1/4" : eps_rat);
        auto emb = embed_weighted_diamond_exact(st, re);
        auto weights = weighted_diamond_exact_weights(st, re);
        for (size_t i = 0; i < graph.edges.size(); ++i) {
            const auto& e = graph.edges[i];
            if (exact_squared_dist(emb, e.u, e.v) != weights[i] * weights[i])
                rep.violations.push_back({{"edge", i}, {"u", e.u}, {"v", e.v}});
        }
    } else {
        auto emb = embed_weighted_diamond(st, eps);
        for (size_t i = 0; i < graph.edges.size(); ++i) {
            const auto& e = graph.edges[i];
            double d = emb.host_dist(e.u, e.v);
            if (std::fabs(d - e.w) > g.tolerance * e.w + kAbsTol)
                rep.violations.push_back(
                    {{"edge", i}, {"u", e.u}, {"v", e.v}, {"dist", d}, {"weight", e.w}});
        }
    }
    return rep;
}

CheckReport suite_bound(double eps, int max_level, const Globals& g) {
    CheckReport rep;
    rep.check = "bound";
    double bound = paper_bound_w(eps);
    rep.parameters = {{"eps", eps}, {"max_level", max_level}, {"bound", bound}};
    for (int n = 1; n <= max_level; ++n) {
        auto [graph, st] = build_weighted_diamond(n, eps);
        auto m = shortest_path_metric(graph, g.threads);
        auto emb = embed_weighted_diamond(st, eps);
        auto r = distortion(emb, m);
        nlohmann::json row = {{"level", n},
                              {"lip", r.lip},
                              {"lip_inv", r.lip_inv},
                              {"distortion", r.distortion}};
        if (r.lip > 1 + g.tolerance || r.distortion > bound)
            rep.violations.push_back(row);
        else
            rep.tight_cases.push_back(row);  // observed values, for the record
    }
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metric graph embeddings toolkit"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--tolerance", g.tolerance, "relative comparison tolerance");
    app.add_flag("--rational", g.rational, "exact rational mode where supported");
    app.add_option("--threads", g.threads, "worker threads for all-pairs metrics");
    app.add_option("--budget", g.budget, "search node budget");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph family as JSON");
    gen->require_subcommand(1);
    std::string out_path;
    bool dot = false;
    int depth = 2, level = 2, nverts = 4, steps = 10, radius = 3;
    double eps = 0.25, removal_prob = 0.0;
    std::string eps_rat;
    std::uint64_t seed = 0;
    std::vector<std::string> block_descs;
    std::vector<int> path_lengths;
    for (const char* name : {"tree", "diamond", "wdiamond", "cycle", "path", "sp",
                             "dinfty", "glue", "l1prod"}) {
        auto* sc = gen->add_subcommand(name);
        sc->add_option("--out,-o", out_path, "output JSON path");
        sc->add_flag("--dot", dot, "print DOT to standard output");
        if (std::string(name) == "tree") sc->add_option("--depth", depth)->required();
        if (std::string(name) == "diamond" || std::string(name) == "wdiamond")
            sc->add_option("--level", level)->required();
        if (std::string(name) == "wdiamond") {
            sc->add_option("--eps", eps);
            sc->add_option("--eps-rational", eps_rat, "eps as p/q for --rational");
        }
        if (std::string(name) == "cycle" || std::string(name) == "path")
            sc->add_option("--n", nverts)->required();
        if (std::string(name) == "sp") {
            sc->add_option("--steps", steps)->required();
            sc->add_option("--seed", seed)->required();
            sc->add_option("--removal-prob", removal_prob);
        }
        if (std::string(name) == "dinfty") sc->add_option("--radius", radius)->required();
        if (std::string(name) == "glue" || std::string(name) == "l1prod")
            sc->add_option("--block", block_descs, "family:param descriptor")->required();
        if (std::string(name) == "glue")
            sc->add_option("--path-length", path_lengths,
                           "joining path lengths (default: minimum feasible)");
    }

    // embed
    auto* embed = app.add_subcommand("embed", "embed a generated graph, report distortion");
    embed->require_subcommand(1);
    std::string in_path, csv_path;
    for (const char* name : {"wdiamond", "glue", "dinfty-phi"}) {
        auto* sc = embed->add_subcommand(name);
        sc->add_option("--in,-i", in_path, "input graph JSON")->required();
        sc->add_option("--out,-o", csv_path, "output embedding CSV");
    }

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);
    int vlevel = 3, vp = -1, vcycle = 7, min_tree = 7, max_tree = 10, max_level = 4;
    bool all_paths = false;
    for (const char* name :
         {"entropy", "generations", "exits", "claim42", "rr", "edgeiso", "bound", "all"}) {
        auto* sc = verify->add_subcommand(name);
        if (std::string(name) != "rr" && std::string(name) != "bound")
            sc->add_option("--level", vlevel);
        if (std::string(name) == "entropy") sc->add_option("--p", vp);
        if (std::string(name) == "claim42") {
            sc->add_option("--eps", eps);
            sc->add_flag("--all-paths", all_paths);
        }
        if (std::string(name) == "edgeiso") {
            sc->add_option("--eps", eps);
            sc->add_option("--eps-rational", eps_rat);
        }
        if (std::string(name) == "rr") {
            sc->add_option("--cycle", vcycle);
            sc->add_option("--min-tree", min_tree);
            sc->add_option("--max-tree", max_tree);
        }
        if (std::string(name) == "bound" || std::string(name) == "all") {
            sc->add_option("--eps", eps);
            sc->add_option("--max-level", max_level);
        }
    }

    // mindist
    auto* mindist = app.add_subcommand("mindist", "exact minimum distortion between graphs");
    std::string src_path, tgt_path;
    mindist->add_option("--source", src_path)->required();
    mindist->add_option("--target", tgt_path)->required();

    CLI11_PARSE(app, argc, argv);
    double t0 = now_ms();

    try {
        if (gen->parsed()) {
            GraphFile f;
            std::vector<Rat> exact;
            bool rat_weights = false;
            if (gen->got_subcommand("tree")) {
                f.graph = build_binary_tree(depth);
                f.family = "tree";
                f.params = {{"depth", depth}};
            } else if (gen->got_subcommand("diamond")) {
                auto b = build_diamond(level);
                f.graph = b.graph;
                f.structure = b.structure;
                f.family = "diamond";
                f.params = {{"level", level}};
            } else if (gen->got_subcommand("wdiamond")) {
                Rat re = eps_rat.empty() ? Rat(1, 4) : parse_rational(eps_rat);
                if (g.rational && !eps_rat.empty()) eps = rational_to_double(re);
                auto b = build_weighted_diamond(level, eps);
                f.graph = b.graph;
                f.structure = b.structure;
                f.family = "wdiamond";
                f.params = {{"level", level}, {"eps", eps}};
                if (g.rational) {
                    exact = weighted_diamond_exact_weights(b.structure, re);
                    f.params["eps_rational"] = rational_to_string(re);
                    rat_weights = true;
                }
            } else if (gen->got_subcommand("cycle")) {
                f.graph = build_cycle(nverts);
                f.family = "cycle";
                f.params = {{"n", nverts}};
            } else if (gen->got_subcommand("path")) {
                f.graph = build_path(nverts);
                f.family = "path";
                f.params = {{"n", nverts}};
            } else if (gen->got_subcommand("sp")) {
                SeriesParallelOptions opts;
                opts.removal_prob = removal_prob;
                f.graph = generate_series_parallel(steps, seed, opts);
                f.family = "sp";
                f.params = {{"steps", steps}, {"seed", seed},
                            {"removal_prob", removal_prob}};
            } else if (gen->got_subcommand("dinfty")) {
                f.graph = dinfinity_ball(radius);
                f.family = "dinfty";
                f.params = {{"radius", radius}};
            } else if (gen->got_subcommand("glue")) {
                std::vector<std::pair<MetricSpace, int>> blocks;
                for (const auto& d : block_descs)
                    blocks.emplace_back(block_metric(d, g.threads), 0);
                std::vector<int> lens = path_lengths;
                if (lens.empty()) {
                    for (size_t i = 0; i + 1 < blocks.size(); ++i) {
                        double need = std::max(diameter(blocks[i].first),
                                               diameter(blocks[i + 1].first));
                        lens.push_back(std::max(1, (int)std::ceil(need - kAbsTol)));
                    }
                }
                auto glued = glue(blocks, lens);
                f.graph = glued.combined;
                f.glued = glued;
                f.family = "glue";
                f.params = {{"blocks", block_descs}, {"path_lengths", lens}};
            } else if (gen->got_subcommand("l1prod")) {
                std::vector<MetricSpace> factors;
                for (const auto& d : block_descs) factors.push_back(block_metric(d, g.threads));
                auto prod = l1_product(factors);
                // products are metric spaces, not graphs: emit the matrix as CSV
                std::string csv = metric_to_csv(prod);
                if (!out_path.empty())
                    write_file(out_path, csv);
                else
                    std::cout << csv;
                return 0;
            }
            emit_graph(f, out_path, dot, rat_weights, rat_weights ? &exact : nullptr);
            return 0;
        }

        if (embed->parsed()) {
            auto f = load_graph(in_path);
            auto m = shortest_path_metric(f.graph, g.threads);
            Embedding emb;
            DistortionReport rep;
            if (embed->got_subcommand("wdiamond")) {
                if (f.family != "wdiamond" || !f.structure)
                    throw std::invalid_argument("embed wdiamond needs a wdiamond file");
                double file_eps = f.params.at("eps").get<double>();
                emb = embed_weighted_diamond(*f.structure, file_eps);
                rep = distortion(emb, m);
            } else if (embed->got_subcommand("glue")) {
                if (f.family != "glue" || !f.glued)
                    throw std::invalid_argument("embed glue needs a glue file");
                std::vector<Embedding> block_embs;
                std::vector<MetricSpace> block_ms;
                for (size_t b = 0; b < f.glued->blocks.size(); ++b) {
                    const auto& blk = f.glued->blocks[b];
                    MetricSpace bm = MetricSpace::zeros(blk.n_points);
                    for (int i = 0; i < blk.n_points; ++i)
                        for (int j = 0; j < blk.n_points; ++j)
                            bm.dist(i, j) = m.dist(blk.offset + i, blk.offset + j);
                    block_embs.push_back(frechet_embedding(bm, blk.base_point));
                    block_ms.push_back(std::move(bm));
                }
                emb = glue_embed(block_embs, block_ms, *f.glued);
                rep = distortion(emb, m);
            } else {
                if (f.family != "dinfty")
                    throw std::invalid_argument("embed dinfty-phi needs a dinfty file");
                int r = f.params.at("radius").get<int>();
                emb = dinfinity_phi(f.graph);
                rep = distortion_on_subset(emb, m, dinfinity_interior(f.graph, r));
            }
            if (!csv_path.empty()) write_file(csv_path, embedding_to_csv(emb, f.graph.labels));
            std::cout << report_json(rep).dump(2) << "\n";
            return 0;
        }

        if (verify->parsed()) {
            if (verify->got_subcommand("entropy"))
                return finish(suite_entropy(vlevel, vp, g), t0);
            if (verify->got_subcommand("generations"))
                return finish(suite_generations(vlevel, g), t0);
            if (verify->got_subcommand("exits"))
                return finish(suite_exits(vlevel), t0);
            if (verify->got_subcommand("claim42"))
                return finish(suite_claim42(vlevel, eps, all_paths, g), t0);
            if (verify->got_subcommand("rr"))
                return finish(suite_rr(vcycle, min_tree, max_tree, g), t0);
            if (verify->got_subcommand("edgeiso"))
                return finish(suite_edgeiso(vlevel, eps, g, eps_rat), t0);
            if (verify->got_subcommand("bound"))
                return finish(suite_bound(eps, max_level, g), t0);
            // all: the whole battery at the given level
            CheckReport rep;
            rep.check = "all";
            rep.parameters = {{"level", vlevel}, {"eps", eps}, {"max_level", max_level}};
            for (CheckReport sub :
                 {suite_entropy(vlevel, -1, g), suite_generations(vlevel, g),
                  suite_exits(vlevel), suite_claim42(vlevel, eps, false, g),
                  suite_edgeiso(vlevel, eps, g, eps_rat), suite_bound(eps, max_level, g)}) {
                if (!sub.certified) rep.certified = false;
                for (auto& v : sub.violations) {
                    v["suite"] = sub.check;
                    rep.violations.push_back(v);
                }
            }
            return finish(rep, t0);
        }

        if (mindist->parsed()) {
            auto src = load_graph(src_path);
            auto tgt = load_graph(tgt_path);
            auto ms = shortest_path_metric(src.graph, g.threads);
            auto mt = shortest_path_metric(tgt.graph, g.threads);
            auto res = min_distortion(ms, mt, g.budget);
            nlohmann::json j = {{"value", res.value},
                                {"map", res.map},
                                {"certified", res.certified},
                                {"nodes", res.nodes}};
            std::cout << j.dump(2) << "\n";
            return res.certified ? 0 : 3;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
