#include "hm/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "hm/errors.hpp"

namespace hm {

namespace {

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::vector<long long> parse_ints(const std::string& line, int lineno) {
    std::istringstream ss(line);
    std::vector<long long> out;
    std::string tok;
    while (ss >> tok) {
        try {
            std::size_t pos = 0;
            long long v = std::stoll(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("expected an integer, got '" + tok + "'", lineno);
        }
    }
    return out;
}

}  // namespace

Hypergraph read_hypergraph_text(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long n = -1, k = -1;
    std::vector<std::vector<int>> edges;
    std::vector<int> edge_lines;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_comment_or_blank(line)) continue;
        auto vals = parse_ints(line, lineno);
        if (n < 0) {
            if (vals.size() != 2) throw ParseError("header must be 'n k'", lineno);
            n = vals[0];
            k = vals[1];
            if (n < 1 || n > 64) throw ParseError("vertex count out of range [1, 64]", lineno);
            if (k < 2 || k > n) throw ParseError("uniformity out of range [2, n]", lineno);
            continue;
        }
        if (static_cast<long long>(vals.size()) != k)
            throw ParseError("edge has wrong arity (expected " + std::to_string(k) + " vertices)",
                             lineno);
        std::vector<int> e;
        for (long long v : vals) {
            if (v < 0 || v >= n) throw ParseError("vertex id out of range", lineno);
            e.push_back(static_cast<int>(v));
        }
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw ParseError("edge repeats a vertex", lineno);
        edges.push_back(std::move(e));
        edge_lines.push_back(lineno);
    }
    if (n < 0) throw ParseError("missing 'n k' header", lineno == 0 ? 1 : lineno);
    // duplicate detection with the offending line number
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (edges[order[i]] == edges[order[i - 1]])
            throw ParseError("duplicate edge", std::max(edge_lines[order[i]], edge_lines[order[i - 1]]));
    }
    return Hypergraph(static_cast<int>(n), static_cast<int>(k), std::move(edges));
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("k") || !j.contains("edges"))
        throw ParseError("expected an object with n, k and edges", 1);
    int n = j.at("n").get<int>();
    int k = j.at("k").get<int>();
    std::vector<std::vector<int>> edges;
    for (const auto& je : j.at("edges")) edges.push_back(je.get<std::vector<int>>());
    try {
        return Hypergraph(n, k, std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1);
    }
}

Hypergraph read_hypergraph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    if (path.extension() == ".json") {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad json: ") + e.what(), 1);
        }
        return hypergraph_from_json(j);
    }
    return read_hypergraph_text(in);
}

std::string hypergraph_to_text(const Hypergraph& h) {
    std::ostringstream out;
    out << h.n() << ' ' << h.k() << '\n';
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
    return out.str();
}

nlohmann::json hypergraph_to_json(const Hypergraph& h) {
    return nlohmann::json{{"n", h.n()}, {"k", h.k()}, {"edges", h.edges()}};
}

void write_hypergraph(const Hypergraph& h, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    if (path.extension() == ".json")
        out << hypergraph_to_json(h).dump(2) << '\n';
    else
        out << hypergraph_to_text(h);
}

OrderedPartition read_partition(const std::filesystem::path& path, int n) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad json: ") + e.what(), 1);
    }
    if (!j.contains("parts")) throw ParseError("partition json needs a 'parts' array", 1);
    std::vector<std::vector<int>> parts;
    for (const auto& jp : j.at("parts")) parts.push_back(jp.get<std::vector<int>>());
    try {
        return OrderedPartition(n, std::move(parts));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1);
    }
}

nlohmann::json partition_to_json(const OrderedPartition& p) {
    return nlohmann::json{{"parts", p.parts()}};
}

void write_partition(const OrderedPartition& p, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << partition_to_json(p).dump(2) << '\n';
}

nlohmann::json matching_to_json(const Matching& m) {
    return nlohmann::json{{"schema", 1}, {"type", "matching"}, {"edges", m.edges}};
}

Matching matching_from_json(const nlohmann::json& j) {
    if (j.value("type", "") != "matching") throw ParseError("certificate is not a matching", 1);
    Matching m;
    for (const auto& je : j.at("edges")) m.edges.push_back(je.get<std::vector<int>>());
    m.canonicalize();
    return m;
}

nlohmann::json tiling_to_json(const Tiling& t, const std::string& pattern_name) {
    nlohmann::json copies = nlohmann::json::array();
    for (const auto& c : t.copies)
        copies.push_back({{"vertices", c.vertices}, {"embedding", c.embedding}});
    return nlohmann::json{
        {"schema", 1}, {"type", "tiling"}, {"pattern", pattern_name}, {"copies", copies}};
}

Tiling tiling_from_json(const nlohmann::json& j) {
    if (j.value("type", "") != "tiling") throw ParseError("certificate is not a tiling", 1);
    Tiling t;
    for (const auto& jc : j.at("copies")) {
        TilingCopy c;
        c.vertices = jc.at("vertices").get<std::vector<int>>();
        c.embedding = jc.at("embedding").get<std::vector<int>>();
        std::sort(c.vertices.begin(), c.vertices.end());
        t.copies.push_back(std::move(c));
    }
    return t;
}

nlohmann::json report_to_json(const ConstructionReport& rep) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : rep.entries) {
        nlohmann::json je{{"name", e.name}, {"value", e.value}};
        if (e.ok)
            je["ok"] = *e.ok;
        else
            je["ok"] = nullptr;
        entries.push_back(je);
    }
    nlohmann::json j{{"schema", 1},
                     {"construction", rep.name},
                     {"params", rep.params},
                     {"checks", entries},
                     {"all_ok", rep.all_ok}};
    if (rep.seed)
        j["seed"] = *rep.seed;
    else
        j["seed"] = nullptr;
    return j;
}

nlohmann::json report_to_json(const FamilyReport& rep) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : rep.samples) samples.push_back({{"S", s.s}, {"count", s.count}});
    return nlohmann::json{{"schema", 1},
                          {"family_size", rep.family_size},
                          {"sampled_S_count", rep.sampled_s_count},
                          {"min_count", rep.min_count},
                          {"median_count", rep.median_count},
                          {"samples", samples},
                          {"failures", rep.failures}};
}

nlohmann::json report_to_json(const Claim41Report& rep) {
    return nlohmann::json{{"schema", 1},
                          {"p", rep.p},
                          {"k", rep.k},
                          {"transferral_free", rep.transferral_free},
                          {"completion", rep.completion},
                          {"completion_vectors_checked", rep.completion_vectors_checked},
                          {"pass", rep.pass}};
}

nlohmann::json diagnostics_to_json(const BarrierDiagnostics& diag) {
    nlohmann::json robust = nlohmann::json::array();
    for (const auto& v : diag.robust.vectors) robust.push_back(v);
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& [vec, cnt] : diag.robust.counts)
        counts.push_back({{"vector", vec}, {"count", cnt}});
    nlohmann::json j{{"schema", 1},
                     {"d", diag.d},
                     {"part_sizes", diag.part_sizes},
                     {"mu", diag.robust.mu},
                     {"robust_vectors", robust},
                     {"vector_counts", counts},
                     {"lattice_basis", diag.lattice_basis},
                     {"transferral_free", diag.transferral_free},
                     {"full", diag.full},
                     {"whole_vector", diag.whole_vector},
                     {"whole_in_lattice", diag.whole_in_lattice},
                     {"soluble", diag.soluble}};
    if (diag.coset_order)
        j["coset_order"] = *diag.coset_order;
    else
        j["coset_order"] = "infinite";
    if (diag.violating_transferral)
        j["violating_transferral"] = {diag.violating_transferral->first,
                                      diag.violating_transferral->second};
    if (diag.solution) j["solution"] = matching_to_json(*diag.solution);
    return j;
}

}  // namespace hm
