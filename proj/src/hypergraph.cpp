#include "hm/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "hm/combinatorics.hpp"
#include "hm/errors.hpp"

namespace hm {

Hypergraph::Hypergraph(int n, int k, std::vector<std::vector<int>> edges)
    : n_(n), k_(k), edges_(std::move(edges)) {
    if (n < 1 || n > 64) throw std::invalid_argument("vertex count must be in [1, 64]");
    if (k < 2) throw std::invalid_argument("uniformity must be at least 2");
    for (auto& e : edges_) {
        if (static_cast<int>(e.size()) != k_)
            throw std::invalid_argument("edge with wrong arity");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw std::invalid_argument("edge with repeated vertex");
        if (e.front() < 0 || e.back() >= n_)
            throw std::invalid_argument("edge vertex out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("duplicate edge");

    edge_masks_.reserve(edges_.size());
    incident_.assign(n_, {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        std::uint64_t m = mask_of(edges_[i]);
        edge_masks_.push_back(m);
        edge_mask_set_.insert(m);
        for (int v : edges_[i]) incident_[v].push_back(static_cast<int>(i));
    }
}

Hypergraph Hypergraph::complete(int n, int k) {
    std::vector<std::vector<int>> es;
    for_each_combination(n, k, [&](const std::vector<int>& c) { es.push_back(c); });
    return Hypergraph(n, k, std::move(es));
}

Hypergraph Hypergraph::edgeless(int n, int k) { return Hypergraph(n, k, {}); }

bool Hypergraph::has_edge(std::span<const int> vs) const {
    if (static_cast<int>(vs.size()) != k_) return false;
    std::uint64_t m = mask_of(vs);
    if (std::popcount(m) != k_) return false;
    return has_edge_mask(m);
}

namespace {

const std::vector<std::vector<int>> kYEdges = {{0, 1, 2}, {0, 1, 3}};
const std::vector<std::vector<int>> kK4mEdges = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}};
const std::vector<std::vector<int>> kK43Edges = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

}  // namespace

PatternGraph::PatternGraph(int f, int k, std::vector<std::vector<int>> edges, std::string name)
    : f_(f), k_(k), edges_(std::move(edges)), name_(std::move(name)) {
    if (f_ < 1 || f_ > 6) throw InvalidPattern("pattern must have between 1 and 6 vertices");
    if (k_ < 2 || k_ > f_) throw InvalidPattern("pattern uniformity out of range");
    for (auto& e : edges_) {
        if (static_cast<int>(e.size()) != k_) throw InvalidPattern("pattern edge with wrong arity");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw InvalidPattern("pattern edge with repeated vertex");
        if (e.front() < 0 || e.back() >= f_) throw InvalidPattern("pattern vertex out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw InvalidPattern("duplicate pattern edge");
    for (const auto& e : edges_)
        edge_bits_.push_back(static_cast<std::uint32_t>(mask_of(e)));
    std::sort(edge_bits_.begin(), edge_bits_.end());
}

const PatternGraph& PatternGraph::Y() {
    static const PatternGraph p(4, 3, kYEdges, "Y");
    return p;
}

const PatternGraph& PatternGraph::K4minus() {
    static const PatternGraph p(4, 3, kK4mEdges, "K4minus");
    return p;
}

const PatternGraph& PatternGraph::K43() {
    static const PatternGraph p(4, 3, kK43Edges, "K43");
    return p;
}

const PatternGraph* PatternGraph::builtin(const std::string& name) {
    if (name == "Y") return &Y();
    if (name == "K4minus") return &K4minus();
    if (name == "K43") return &K43();
    return nullptr;
}

long long degree(const Hypergraph& h, std::span<const int> s) {
    int d = static_cast<int>(s.size());
    if (d < 1 || d > h.k() - 1) throw InvalidArity("degree requires 1 <= |S| <= k-1");
    std::uint64_t sm = mask_of(s);
    if (std::popcount(sm) != d) throw std::invalid_argument("degree: repeated vertex in S");
    if (sm & ~h.full_mask()) throw std::invalid_argument("degree: vertex out of range");
    long long cnt = 0;
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        if ((h.edge_mask(i) & sm) == sm) ++cnt;
    }
    return cnt;
}

long long min_degree(const Hypergraph& h, int d) {
    if (d < 1 || d > h.k() - 1) throw InvalidArity("min_degree requires 1 <= d <= k-1");
    long long best = -1;
    for_each_combination(h.n(), d, [&](const std::vector<int>& s) {
        long long dg = degree(h, s);
        if (best < 0 || dg < best) best = dg;
    });
    return best < 0 ? 0 : best;
}

namespace {

struct IndependenceSearch {
    const Hypergraph& h;
    SearchBudget& budget;
    int best = 0;
    std::uint64_t best_mask = 0;
    int stop_at;  // early exit once best >= stop_at (n+1 disables)

    IndependenceSearch(const Hypergraph& hh, SearchBudget& b, int stop)
        : h(hh), budget(b), stop_at(stop) {}

    bool extendable(std::uint64_t chosen, int v) const {
        std::uint64_t next = chosen | (std::uint64_t{1} << v);
        for (int ei : h.incident_edges(v)) {
            if ((h.edge_mask(ei) & ~next) == 0) return false;
        }
        return true;
    }

    // returns true if the early-exit threshold was reached
    bool rec(int idx, std::uint64_t chosen, int count) {
        budget.charge();
        if (count > best) {
            best = count;
            best_mask = chosen;
            if (best >= stop_at) return true;
        }
        if (idx == h.n()) return false;
        if (count + (h.n() - idx) <= best) return false;
        if (extendable(chosen, idx)) {
            if (rec(idx + 1, chosen | (std::uint64_t{1} << idx), count + 1)) return true;
        }
        return rec(idx + 1, chosen, count);
    }
};

}  // namespace

int independence_number(const Hypergraph& h, SearchBudget& budget, std::vector<int>* witness) {
    IndependenceSearch search(h, budget, h.n() + 1);
    search.rec(0, 0, 0);
    if (witness) *witness = vertices_of_mask(search.best_mask);
    return search.best;
}

bool has_independent_set(const Hypergraph& h, int target, SearchBudget& budget) {
    if (target <= 0) return true;
    IndependenceSearch search(h, budget, target);
    return search.rec(0, 0, 0);
}

namespace {

// Collect the edges of H[W] relabelled to 0..f-1 as bit masks.
std::vector<std::uint32_t> induced_edge_bits(const Hypergraph& h, const std::vector<int>& w) {
    int f = static_cast<int>(w.size());
    std::vector<std::uint32_t> bits;
    std::vector<int> sub;
    for_each_combination(f, h.k(), [&](const std::vector<int>& idx) {
        sub.clear();
        for (int i : idx) sub.push_back(w[i]);
        if (h.has_edge(sub)) {
            std::uint32_t b = 0;
            for (int i : idx) b |= 1u << i;
            bits.push_back(b);
        }
    });
    std::sort(bits.begin(), bits.end());
    return bits;
}

std::uint32_t remap_bits(std::uint32_t b, const std::vector<int>& perm) {
    std::uint32_t out = 0;
    for (int i = 0; i < static_cast<int>(perm.size()); ++i)
        if (b & (1u << i)) out |= 1u << perm[i];
    return out;
}

// Does some bijection map the pattern edges onto (subset of) the host bits?
bool pattern_maps(const PatternGraph& f, const std::vector<std::uint32_t>& host_bits,
                  bool exact) {
    std::vector<int> perm(f.f());
    for (int i = 0; i < f.f(); ++i) perm[i] = i;
    std::vector<std::uint32_t> mapped(f.edge_bits().size());
    do {
        bool ok = true;
        for (std::size_t i = 0; i < f.edge_bits().size(); ++i)
            mapped[i] = remap_bits(f.edge_bits()[i], perm);
        std::sort(mapped.begin(), mapped.end());
        if (exact) {
            ok = mapped == host_bits;
        } else {
            for (std::uint32_t b : mapped) {
                if (!std::binary_search(host_bits.begin(), host_bits.end(), b)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::optional<std::vector<int>> scan_for_pattern(const Hypergraph& h, const PatternGraph& f,
                                                 bool induced) {
    if (f.k() != h.k()) throw InvalidPattern("pattern uniformity does not match hypergraph");
    if (f.f() > h.n()) return std::nullopt;
    std::optional<std::vector<int>> hit;
    for_each_combination(h.n(), f.f(), [&](const std::vector<int>& w) {
        if (hit) return;
        auto bits = induced_edge_bits(h, w);
        if (induced) {
            if (bits.size() != f.edge_bits().size()) return;
            if (pattern_maps(f, bits, true)) hit = w;
        } else {
            if (bits.size() < f.edge_bits().size()) return;
            if (pattern_maps(f, bits, false)) hit = w;
        }
    });
    return hit;
}

}  // namespace

std::optional<std::vector<int>> find_induced_pattern(const Hypergraph& h, const PatternGraph& f) {
    return scan_for_pattern(h, f, true);
}

std::optional<std::vector<int>> find_pattern(const Hypergraph& h, const PatternGraph& f) {
    return scan_for_pattern(h, f, false);
}

LinkGraph link_graph(const Hypergraph& h, int v, std::span<const int> u) {
    if (h.k() != 3) throw InvalidArity("link_graph requires a 3-graph");
    if (v < 0 || v >= h.n()) throw std::invalid_argument("link_graph: vertex out of range");
    LinkGraph g;
    g.ground.assign(u.begin(), u.end());
    std::sort(g.ground.begin(), g.ground.end());
    if (std::adjacent_find(g.ground.begin(), g.ground.end()) != g.ground.end())
        throw std::invalid_argument("link_graph: repeated vertex in U");
    for (int x : g.ground) {
        if (x < 0 || x >= h.n()) throw std::invalid_argument("link_graph: vertex out of range");
        if (x == v) throw std::invalid_argument("link_graph: v must not lie in U");
    }
    int t = static_cast<int>(g.ground.size());
    std::vector<int> e(3);
    for (int i = 0; i < t; ++i) {
        for (int j = i + 1; j < t; ++j) {
            e = {v, g.ground[i], g.ground[j]};
            if (h.has_edge(e)) g.pairs.emplace_back(g.ground[i], g.ground[j]);
        }
    }
    return g;
}

long long count_triangles(const LinkGraph& g) {
    int t = static_cast<int>(g.ground.size());
    std::vector<int> pos(g.ground.empty() ? 0 : g.ground.back() + 1, -1);
    for (int i = 0; i < t; ++i) pos[g.ground[i]] = i;
    std::vector<std::uint64_t> adj(t, 0);
    for (auto [a, b] : g.pairs) {
        int ia = pos[a], ib = pos[b];
        adj[ia] |= std::uint64_t{1} << ib;
        adj[ib] |= std::uint64_t{1} << ia;
    }
    long long total = 0;
    for (auto [a, b] : g.pairs) {
        int ia = pos[a], ib = pos[b];
        // count common neighbours above both endpoints to hit each triangle once
        std::uint64_t common = adj[ia] & adj[ib];
        common &= ~((std::uint64_t{2} << std::max(ia, ib)) - 1);
        total += std::popcount(common);
    }
    return total;
}

Rational goodman_bound(long long n, long long m) {
    if (n < 1) throw std::invalid_argument("goodman_bound requires n >= 1");
    return Rational(m * (4 * m - n * n), 3 * n);
}

}  // namespace hm
