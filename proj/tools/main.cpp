#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "experiments.hpp"
#include "hm/absorbing.hpp"
#include "hm/constructions.hpp"
#include "hm/errors.hpp"
#include "hm/hypergraph.hpp"
#include "hm/io.hpp"
#include "hm/lattice.hpp"
#include "hm/matching.hpp"

using nlohmann::json;
using namespace hm;

namespace {

// exit codes: 0 ok, 1 assertion failure, 2 input error, 3 budget exhausted
constexpr int kOk = 0;
constexpr int kAssertionFailure = 1;
constexpr int kInputError = 2;
constexpr int kBudgetExhausted = 3;

struct GlobalOptions {
    std::uint64_t budget = SearchBudget::kDefaultNodes;
    std::uint64_t seed = 1;
    std::string json_path;
};

void emit(const GlobalOptions& g, const json& report) {
    if (g.json_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(g.json_path);
        if (!out) throw std::runtime_error("cannot write '" + g.json_path + "'");
        out << report.dump(2) << "\n";
    }
}

PatternGraph load_pattern(const std::string& name_or_path) {
    if (const PatternGraph* builtin = PatternGraph::builtin(name_or_path)) return *builtin;
    Hypergraph h = read_hypergraph(name_or_path);
    if (h.n() > 6) throw InvalidPattern("pattern files may have at most 6 vertices");
    return PatternGraph(h.n(), h.k(), h.edges(), std::filesystem::path(name_or_path).stem().string());
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoi(tok));
    }
    return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoull(tok));
    }
    return out;
}

// ---- gen ----

struct GenOptions {
    std::string construction;
    int k = 3;
    int n = 0;
    int m = 0;
    std::string which = "K43";
    std::string out;
    std::string partition_out;
    std::string report_path;
    bool no_check = false;
};

int cmd_gen(const GlobalOptions& g, const GenOptions& o) {
    SearchBudget budget(g.budget);
    std::optional<Hypergraph> graph;
    std::optional<OrderedPartition> partition;
    std::optional<ConstructionReport> report;

    if (o.construction == "mycroft") {
        auto mc = gen_mycroft(o.k, o.n);
        graph = mc.graph;
        partition = mc.partition;
        if (!o.no_check) report = check_mycroft(mc, budget);
    } else if (o.construction == "space-barrier") {
        graph = gen_space_barrier(o.m, o.n, g.seed);
        if (!o.no_check) report = check_space_barrier(*graph, o.m, g.seed, budget);
    } else if (o.construction == "h1") {
        graph = gen_h1(o.n, g.seed);
        if (!o.no_check) report = check_h1(*graph, g.seed, budget);
    } else if (o.construction == "h2") {
        graph = gen_h2(o.n, g.seed);
        if (!o.no_check) report = check_h2(*graph, g.seed, budget);
    } else if (o.construction == "tiling-barrier") {
        TilingBarrierKind kind;
        if (o.which == "K43")
            kind = TilingBarrierKind::K43;
        else if (o.which == "K4minus")
            kind = TilingBarrierKind::K4minus;
        else
            throw std::invalid_argument("--which must be K43 or K4minus");
        graph = gen_tiling_barrier(o.n, kind, g.seed);
        if (!o.no_check) report = check_tiling_barrier(*graph, kind, g.seed, budget);
    } else if (o.construction == "parity-barrier") {
        graph = gen_parity_barrier(o.n, g.seed);
        if (!o.no_check) report = check_parity_barrier(*graph, g.seed, budget);
    } else if (o.construction == "cyclic-barrier") {
        graph = gen_cyclic_barrier(o.m);
        if (!o.no_check) report = check_cyclic_barrier(*graph, o.m, budget);
    } else {
        throw std::invalid_argument("unknown construction '" + o.construction + "'");
    }

    if (!o.out.empty()) write_hypergraph(*graph, o.out);
    if (!o.partition_out.empty()) {
        if (!partition) throw std::invalid_argument("this construction has no partition output");
        write_partition(*partition, o.partition_out);
    }

    json j{{"schema", 1}, {"construction", o.construction}, {"n", graph->n()}, {"k", graph->k()},
           {"edges", graph->edge_count()}};
    if (!o.out.empty()) j["file"] = o.out;
    if (report) {
        j["report"] = report_to_json(*report);
        if (!o.report_path.empty()) {
            std::ofstream rf(o.report_path);
            if (!rf) throw std::runtime_error("cannot write '" + o.report_path + "'");
            rf << report_to_json(*report).dump(2) << "\n";
        }
    }
    emit(g, j);
    return (report && !report->all_ok) ? kAssertionFailure : kOk;
}

// ---- check ----

struct CheckOptions {
    std::string file;
    int codegree = -1;
    bool alpha = false;
    std::string induced_free;
    std::string free_pattern;
    bool pm = false;
    std::string tiling;
    std::string partition;
    double mu = 1e-3;
};

int cmd_check(const GlobalOptions& g, const CheckOptions& o) {
    Hypergraph h = read_hypergraph(o.file);
    SearchBudget budget(g.budget);
    json j{{"schema", 1}, {"file", o.file}, {"n", h.n()}, {"k", h.k()}};
    if (o.codegree > 0) j["codegree"] = {{"d", o.codegree}, {"value", min_degree(h, o.codegree)}};
    if (o.alpha) {
        std::vector<int> witness;
        j["alpha"] = independence_number(h, budget, &witness);
        j["alpha_witness"] = witness;
    }
    if (!o.induced_free.empty()) {
        PatternGraph pat = load_pattern(o.induced_free);
        auto witness = find_induced_pattern(h, pat);
        j["induced_free"] = {{"pattern", pat.name()}, {"free", !witness.has_value()}};
        if (witness) j["induced_free"]["witness"] = *witness;
    }
    if (!o.free_pattern.empty()) {
        PatternGraph pat = load_pattern(o.free_pattern);
        auto witness = find_pattern(h, pat);
        j["free"] = {{"pattern", pat.name()}, {"free", !witness.has_value()}};
        if (witness) j["free"]["witness"] = *witness;
    }
    if (o.pm) {
        auto res = has_perfect_matching(h, budget);
        j["pm"] = res.exists;
        if (res.certificate) j["pm_certificate"] = matching_to_json(*res.certificate);
    }
    if (!o.tiling.empty()) {
        PatternGraph pat = load_pattern(o.tiling);
        auto res = has_perfect_tiling(h, pat, budget);
        j["tiling"] = {{"pattern", pat.name()}, {"perfect_tiling", res.exists}};
        if (res.certificate) j["tiling"]["certificate"] = tiling_to_json(*res.certificate, pat.name());
    }
    if (!o.partition.empty()) {
        OrderedPartition p = read_partition(o.partition, h.n());
        j["lattice"] = diagnostics_to_json(barrier_diagnostics(h, p, o.mu, budget));
    }
    emit(g, j);
    return kOk;
}

// ---- match / tile ----

struct MatchOptions {
    std::string file;
    std::string mode = "perfect";  // perfect | exact-max | local
    std::string cert;
    bool shuffled = false;
};

int cmd_match(const GlobalOptions& g, const MatchOptions& o) {
    Hypergraph h = read_hypergraph(o.file);
    SearchBudget budget(g.budget);
    json j{{"schema", 1}, {"file", o.file}, {"mode", o.mode}};
    std::optional<Matching> cert;
    if (o.mode == "perfect") {
        auto res = has_perfect_matching(h, budget);
        j["perfect_matching"] = res.exists;
        cert = res.certificate;
    } else if (o.mode == "exact-max") {
        Matching m = max_matching(h, budget);
        j["max_matching"] = m.size();
        j["covers"] = m.size() * static_cast<std::size_t>(h.k());
        cert = m;
    } else if (o.mode == "local") {
        Matching m = o.shuffled ? local_search_matching(h, g.seed) : local_search_matching(h);
        j["local_matching"] = m.size();
        j["maximal"] = matching_is_maximal(h, m);
        j["swap_stable"] = matching_is_swap_stable(h, m);
        cert = m;
    } else {
        throw std::invalid_argument("--mode must be perfect, exact-max or local");
    }
    if (cert && !o.cert.empty()) {
        std::ofstream out(o.cert);
        if (!out) throw std::runtime_error("cannot write '" + o.cert + "'");
        out << matching_to_json(*cert).dump(2) << "\n";
        j["certificate_file"] = o.cert;
    }
    j["search_nodes"] = budget.used();
    emit(g, j);
    return kOk;
}

struct TileOptions {
    std::string file;
    std::string pattern = "Y";
    std::string mode = "perfect";  // perfect | local
    std::string cert;
    bool shuffled = false;
};

int cmd_tile(const GlobalOptions& g, const TileOptions& o) {
    Hypergraph h = read_hypergraph(o.file);
    PatternGraph pat = load_pattern(o.pattern);
    SearchBudget budget(g.budget);
    json j{{"schema", 1}, {"file", o.file}, {"pattern", pat.name()}, {"mode", o.mode}};
    std::optional<Tiling> cert;
    if (o.mode == "perfect") {
        auto res = has_perfect_tiling(h, pat, budget);
        j["perfect_tiling"] = res.exists;
        cert = res.certificate;
    } else if (o.mode == "local") {
        Tiling t = o.shuffled ? local_search_tiling(h, pat, g.seed) : local_search_tiling(h, pat);
        j["local_tiling"] = t.size();
        j["maximal"] = tiling_is_maximal(h, pat, t);
        j["swap_stable"] = tiling_is_swap_stable(h, pat, t);
        cert = t;
    } else {
        throw std::invalid_argument("--mode must be perfect or local");
    }
    if (cert && !o.cert.empty()) {
        std::ofstream out(o.cert);
        if (!out) throw std::runtime_error("cannot write '" + o.cert + "'");
        out << tiling_to_json(*cert, pat.name()).dump(2) << "\n";
        j["certificate_file"] = o.cert;
    }
    j["search_nodes"] = budget.used();
    emit(g, j);
    return kOk;
}

// ---- lattice ----

struct LatticeOptions {
    std::string file;
    std::string partition;
    double mu = 1e-3;
};

int cmd_lattice(const GlobalOptions& g, const LatticeOptions& o) {
    Hypergraph h = read_hypergraph(o.file);
    OrderedPartition p = read_partition(o.partition, h.n());
    SearchBudget budget(g.budget);
    emit(g, diagnostics_to_json(barrier_diagnostics(h, p, o.mu, budget)));
    return kOk;
}

// ---- absorb ----

struct AbsorbOptions {
    std::string file;
    double beta = 0.2;
    int samples = 20;
    std::string count_s;
};

int cmd_absorb(const GlobalOptions& g, const AbsorbOptions& o) {
    Hypergraph h = read_hypergraph(o.file);
    json j{{"schema", 1}, {"file", o.file}};
    if (!o.count_s.empty()) {
        std::vector<int> s = parse_int_list(o.count_s);
        j["S"] = s;
        j["absorbing_edges"] = count_absorbing(h, s);
    } else {
        AbsorbingFamily fam = build_absorbing_family(h, o.beta, g.seed);
        FamilyReport rep =
            sample_family_counts(h, fam, static_cast<std::size_t>(o.samples), g.seed ^ 0x9e3779b9ULL);
        j["beta"] = o.beta;
        j["seed"] = g.seed;
        j["family"] = matching_to_json(fam.family);
        j["report"] = report_to_json(rep);
    }
    emit(g, j);
    return kOk;
}

// ---- validate-certificate ----

struct ValidateOptions {
    std::string file;
    std::string cert;
    std::string pattern;
    bool require_perfect = false;
};

int cmd_validate(const GlobalOptions& g, const ValidateOptions& o) {
    Hypergraph h = read_hypergraph(o.file);
    std::ifstream in(o.cert);
    if (!in) throw ParseError("cannot open '" + o.cert + "'", 0);
    json cj;
    try {
        in >> cj;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad json: ") + e.what(), 1);
    }
    std::string type = cj.value("type", "");
    bool valid = false;
    std::string why;
    if (type == "matching") {
        valid = validate_matching(h, matching_from_json(cj), o.require_perfect, &why);
    } else if (type == "tiling") {
        std::string pattern_name = o.pattern.empty() ? cj.value("pattern", "") : o.pattern;
        if (pattern_name.empty())
            throw std::invalid_argument("tiling certificates need --pattern");
        PatternGraph pat = load_pattern(pattern_name);
        valid = validate_tiling(h, pat, tiling_from_json(cj), o.require_perfect, &why);
    } else {
        throw ParseError("certificate type must be 'matching' or 'tiling'", 1);
    }
    json j{{"schema", 1}, {"file", o.file}, {"certificate", o.cert}, {"valid", valid}};
    if (!valid) j["reason"] = why;
    emit(g, j);
    return valid ? kOk : kAssertionFailure;
}

// ---- experiment ----

struct ExperimentCliOptions {
    std::string name;
    std::string ns, ks, ps, seeds;
    int samples = -1;
    double gamma = 0.05;
    double mu = 1e-3;
};

int cmd_experiment(const GlobalOptions& g, const ExperimentCliOptions& o) {
    if (!is_experiment(o.name)) {
        std::string all;
        for (const auto& n : experiment_names()) all += (all.empty() ? "" : ", ") + n;
        throw std::invalid_argument("unknown experiment '" + o.name + "' (expected one of " + all +
                                    ")");
    }
    ExperimentOptions opts;
    opts.ns = parse_int_list(o.ns);
    opts.ks = parse_int_list(o.ks);
    opts.ps = parse_int_list(o.ps);
    opts.seeds = parse_seed_list(o.seeds);
    opts.samples = o.samples;
    opts.gamma = o.gamma;
    opts.mu = o.mu;
    opts.budget = g.budget;
    opts.seed = g.seed;
    ExperimentOutcome outcome = run_experiment(o.name, opts);
    emit(g, outcome.report);
    return outcome.pass ? kOk : kAssertionFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact matchings, tilings and divisibility barriers in small uniform "
                 "hypergraphs"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--budget", g.budget, "node budget for exact searches");
    app.add_option("--seed", g.seed, "seed for randomized steps");
    app.add_option("--json", g.json_path, "write the report to this file instead of stdout");

    GenOptions gen;
    auto* sc_gen = app.add_subcommand("gen", "generate a named construction");
    sc_gen->add_option("construction", gen.construction,
                       "mycroft | space-barrier | h1 | h2 | tiling-barrier | parity-barrier | "
                       "cyclic-barrier")
        ->required();
    sc_gen->add_option("--k", gen.k, "uniformity (mycroft)");
    sc_gen->add_option("--n", gen.n, "vertex count");
    sc_gen->add_option("--m", gen.m, "part size parameter (space-barrier, cyclic-barrier)");
    sc_gen->add_option("--which", gen.which, "tiling-barrier flavour: K43 | K4minus");
    sc_gen->add_option("--out", gen.out, "output .hg (or .json) path");
    sc_gen->add_option("--partition-out", gen.partition_out, "write the partition (mycroft)");
    sc_gen->add_option("--report", gen.report_path, "write the checklist report to this file");
    sc_gen->add_flag("--no-check", gen.no_check, "skip the property checklist");

    CheckOptions check;
    auto* sc_check = app.add_subcommand("check", "run property checks on a hypergraph file");
    sc_check->add_option("file", check.file)->required();
    sc_check->add_option("--codegree", check.codegree, "minimum d-degree for this d");
    sc_check->add_flag("--alpha", check.alpha, "exact independence number");
    sc_check->add_option("--induced-free", check.induced_free,
                         "induced-freeness of a pattern (Y | K4minus | K43 | file)");
    sc_check->add_option("--free", check.free_pattern, "subgraph-freeness of a pattern");
    sc_check->add_flag("--pm", check.pm, "perfect matching by exact search");
    sc_check->add_option("--tiling", check.tiling, "perfect tiling by this pattern");
    sc_check->add_option("--partition", check.partition, "partition file for lattice diagnostics");
    sc_check->add_option("--mu", check.mu, "robustness threshold");

    MatchOptions match;
    auto* sc_match = app.add_subcommand("match", "matching searches");
    sc_match->add_option("file", match.file)->required();
    sc_match->add_option("--mode", match.mode, "perfect | exact-max | local");
    sc_match->add_option("--cert", match.cert, "write the certificate to this file");
    sc_match->add_flag("--shuffled", match.shuffled, "shuffle the local-search scan order");

    TileOptions tile;
    auto* sc_tile = app.add_subcommand("tile", "tiling searches");
    sc_tile->add_option("file", tile.file)->required();
    sc_tile->add_option("--pattern", tile.pattern, "Y | K4minus | K43 | file");
    sc_tile->add_option("--mode", tile.mode, "perfect | local");
    sc_tile->add_option("--cert", tile.cert, "write the certificate to this file");
    sc_tile->add_flag("--shuffled", tile.shuffled, "shuffle the local-search scan order");

    LatticeOptions lattice;
    auto* sc_lattice = app.add_subcommand("lattice", "index-vector lattice diagnostics");
    sc_lattice->add_option("file", lattice.file)->required();
    sc_lattice->add_option("--partition", lattice.partition, "partition json")->required();
    sc_lattice->add_option("--mu", lattice.mu, "robustness threshold");

    AbsorbOptions absorb;
    auto* sc_absorb = app.add_subcommand("absorb", "absorbing-family construction and counts");
    sc_absorb->add_option("file", absorb.file)->required();
    sc_absorb->add_option("--beta", absorb.beta, "sampling scale; edge probability beta*n^(1-k)");
    sc_absorb->add_option("--samples", absorb.samples, "number of sampled (k+1)-sets");
    sc_absorb->add_option("--count-S", absorb.count_s,
                          "count absorbing edges for this comma-separated (k+1)-set");

    ExperimentCliOptions experiment;
    auto* sc_exp = app.add_subcommand("experiment", "run a named experiment grid");
    sc_exp->add_option("name", experiment.name)->required();
    sc_exp->add_option("--n", experiment.ns, "comma-separated n values");
    sc_exp->add_option("--k", experiment.ks, "comma-separated k values");
    sc_exp->add_option("--p", experiment.ps, "comma-separated p values");
    sc_exp->add_option("--seeds", experiment.seeds, "comma-separated seeds");
    sc_exp->add_option("--samples", experiment.samples, "sample count");
    sc_exp->add_option("--gamma", experiment.gamma, "codegree slack");
    sc_exp->add_option("--mu", experiment.mu, "robustness threshold");

    ValidateOptions validate;
    auto* sc_validate = app.add_subcommand("validate-certificate", "re-validate a certificate");
    sc_validate->add_option("file", validate.file)->required();
    sc_validate->add_option("--cert", validate.cert)->required();
    sc_validate->add_option("--pattern", validate.pattern, "pattern for tiling certificates");
    sc_validate->add_flag("--require-perfect", validate.require_perfect,
                          "demand full vertex coverage");

    // global flags may follow the subcommand
    for (CLI::App* sc : app.get_subcommands({})) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*sc_gen) return cmd_gen(g, gen);
        if (*sc_check) return cmd_check(g, check);
        if (*sc_match) return cmd_match(g, match);
        if (*sc_tile) return cmd_tile(g, tile);
        if (*sc_lattice) return cmd_lattice(g, lattice);
        if (*sc_absorb) return cmd_absorb(g, absorb);
        if (*sc_exp) return cmd_experiment(g, experiment);
        if (*sc_validate) return cmd_validate(g, validate);
    } catch (const BudgetExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudgetExhausted;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kOk;
}
