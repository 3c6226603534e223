#include "hm/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "hm/combinatorics.hpp"
#include "hm/errors.hpp"
#include "hm/rng.hpp"

namespace hm {

int smallest_prime_factor(int k) {
    if (k < 2) throw std::invalid_argument("smallest_prime_factor requires k >= 2");
    for (int p = 2; p * p <= k; ++p)
        if (k % p == 0) return p;
    return k;
}

Tournament Tournament::random(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("tournament needs at least one vertex");
    Tournament t(n);
    Rng rng(seed);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) t.toward_min_[t.idx(i, j)] = rng.bits() & 1;
    return t;
}

Tournament Tournament::transitive(int n) {
    if (n < 1) throw std::invalid_argument("tournament needs at least one vertex");
    return Tournament(n);
}

bool Tournament::points_to(int from, int to) const {
    if (from == to || from < 0 || to < 0 || from >= n_ || to >= n_)
        throw std::invalid_argument("tournament: bad vertex pair");
    if (from < to) return !toward_min_[idx(from, to)];
    return toward_min_[idx(to, from)];
}

namespace {

std::vector<IndexVector> mycroft_generators(int p) {
    // v_i = u_i + (i-1) u_p for 1 <= i < p, over Z_p^p
    std::vector<IndexVector> gens;
    for (int i = 1; i < p; ++i) {
        IndexVector v(p, 0);
        v[i - 1] = 1;
        v[p - 1] += i - 1;
        gens.push_back(v);
    }
    return gens;
}

std::vector<std::vector<int>> contiguous_parts(const std::vector<int>& sizes) {
    std::vector<std::vector<int>> parts;
    int next = 0;
    for (int s : sizes) {
        std::vector<int> part(s);
        std::iota(part.begin(), part.end(), next);
        next += s;
        parts.push_back(std::move(part));
    }
    return parts;
}

}  // namespace

MycroftConstruction gen_mycroft(int k, int n) {
    if (k < 3) throw std::invalid_argument("construction requires k >= 3");
    int p = smallest_prime_factor(k);
    if (n % p != 0) throw std::invalid_argument("n must be divisible by the smallest prime factor");
    if (n < p * k) throw std::invalid_argument("n must be at least p * k");
    if (n > 64) throw std::invalid_argument("n must be at most 64");

    IntegerLattice lattice = IntegerLattice::span(mycroft_generators(p), p, p);

    auto vector_of = [&](const std::vector<int>& sizes) {
        IndexVector iv(sizes.begin(), sizes.end());
        return iv;
    };
    std::vector<int> sizes(p, n / p);
    if (lattice.contains(vector_of(sizes))) {
        sizes[0] = n / p - 1;
        sizes[1] = n / p + 1;
        if (lattice.contains(vector_of(sizes)))
            throw std::logic_error("no admissible part sizes; lattice should be transferral-free");
    }

    OrderedPartition partition(n, contiguous_parts(sizes));
    std::vector<std::vector<int>> edges;
    for_each_combination(n, k, [&](const std::vector<int>& e) {
        if (lattice.contains(partition.index_vector(e))) edges.push_back(e);
    });
    return {Hypergraph(n, k, std::move(edges)), std::move(partition), std::move(lattice), p};
}

Hypergraph gen_space_barrier(int m, int n, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    if (2 * m > n) throw std::invalid_argument("m must be at most n/2");
    if (n > 64) throw std::invalid_argument("n must be at most 64");
    std::vector<std::vector<int>> edges;
    for_each_combination(m, 3, [&](const std::vector<int>& e) { edges.push_back(e); });
    std::vector<int> b(n - m);
    std::iota(b.begin(), b.end(), m);
    Rng rng(seed);
    for (int a = 0; a < m; ++a) {
        std::vector<int> shuffled = b;
        rng.shuffle(shuffled);
        std::size_t half = (shuffled.size() + 1) / 2;
        for (std::size_t i = 0; i < half; ++i) {
            for (std::size_t j = half; j < shuffled.size(); ++j) {
                std::vector<int> e = {a, shuffled[i], shuffled[j]};
                edges.push_back(std::move(e));
            }
        }
    }
    return Hypergraph(n, 3, std::move(edges));
}

Hypergraph gen_h1(const Tournament& t) {
    int n = t.n();
    if (n < 4) throw std::invalid_argument("construction requires n >= 4");
    std::vector<std::vector<int>> edges;
    for_each_combination(n, 3, [&](const std::vector<int>& c) {
        int x = c[0], y = c[1], z = c[2];
        int toward_x = (t.points_to(y, x) ? 1 : 0) + (t.points_to(z, x) ? 1 : 0);
        if (toward_x == 1) edges.push_back(c);
    });
    return Hypergraph(n, 3, std::move(edges));
}

Hypergraph gen_h1(int n, std::uint64_t seed) { return gen_h1(Tournament::random(n, seed)); }

Hypergraph gen_h2(const Tournament& t) {
    int n = t.n();
    if (n < 4) throw std::invalid_argument("construction requires n >= 4");
    std::vector<std::vector<int>> edges;
    for_each_combination(n, 3, [&](const std::vector<int>& c) {
        int x = c[0], y = c[1], z = c[2];
        bool cyc = (t.points_to(x, y) && t.points_to(y, z) && t.points_to(z, x)) ||
                   (t.points_to(y, x) && t.points_to(z, y) && t.points_to(x, z));
        if (cyc) edges.push_back(c);
    });
    return Hypergraph(n, 3, std::move(edges));
}

Hypergraph gen_h2(int n, std::uint64_t seed) { return gen_h2(Tournament::random(n, seed)); }

namespace {

// Shift a hypergraph on {0..m-1} onto {offset..offset+m-1} and append.
void append_shifted(std::vector<std::vector<int>>& edges, const Hypergraph& h, int offset) {
    for (const auto& e : h.edges()) {
        std::vector<int> shifted = e;
        for (int& v : shifted) v += offset;
        edges.push_back(std::move(shifted));
    }
}

}  // namespace

Hypergraph gen_tiling_barrier(int n, TilingBarrierKind kind, std::uint64_t seed) {
    if (n % 4 != 0) throw std::invalid_argument("n must be divisible by 4");
    if (n < 16) throw std::invalid_argument("n must be at least 16");
    if (n > 64) throw std::invalid_argument("n must be at most 64");
    int a = n / 4 - 1;
    std::vector<std::vector<int>> edges;
    for_each_combination(n, 3, [&](const std::vector<int>& e) {
        if (e[0] < a) edges.push_back(e);  // triple meets A = {0..a-1}
    });
    Hypergraph inner = (kind == TilingBarrierKind::K43) ? gen_h1(n - a, seed) : gen_h2(n - a, seed);
    append_shifted(edges, inner, a);
    return Hypergraph(n, 3, std::move(edges));
}

Hypergraph gen_parity_barrier(int n, std::uint64_t seed) {
    if (n % 3 != 0) throw std::invalid_argument("n must be divisible by 3");
    if (n > 64) throw std::invalid_argument("n must be at most 64");
    int v2 = (n / 3) % 2 == 1 ? n / 3 : n / 3 + 1;
    if (v2 % 2 == 0) throw std::invalid_argument("no odd part size available");
    int v1 = n - v2;
    if (v1 < 4) throw std::invalid_argument("n too small");
    std::vector<std::vector<int>> edges;
    // one vertex in V1 = {0..v1-1}, two in V2 = rest
    for (int x = 0; x < v1; ++x) {
        for (int i = v1; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) edges.push_back({x, i, j});
        }
    }
    append_shifted(edges, gen_h1(v1, seed), 0);
    return Hypergraph(n, 3, std::move(edges));
}

Hypergraph gen_cyclic_barrier(int m) {
    if (m < 4) throw std::invalid_argument("m must be at least 4");
    if (m % 3 == 0) throw std::invalid_argument("m must not be divisible by 3");
    if (3 * m > 64) throw std::invalid_argument("3m must be at most 64");
    int n = 3 * m;
    std::vector<std::vector<int>> edges;
    for (int part = 0; part < 3; ++part) {
        int lo = part * m, next_lo = ((part + 1) % 3) * m;
        for (int i = lo; i < lo + m; ++i) {
            for (int j = i + 1; j < lo + m; ++j) {
                for (int x = next_lo; x < next_lo + m; ++x) edges.push_back({i, j, x});
            }
        }
    }
    return Hypergraph(n, 3, std::move(edges));
}

Claim41Report verify_claim_41(int p, int k) {
    Claim41Report rep;
    rep.p = p;
    rep.k = k;
    if (p < 2 || smallest_prime_factor(p) != p) throw std::invalid_argument("p must be prime");
    if (k % p != 0) throw std::invalid_argument("p must divide k");
    if (smallest_prime_factor(k) != p)
        throw std::invalid_argument("p must be the smallest prime factor of k");

    IntegerLattice lattice = IntegerLattice::span(mycroft_generators(p), p, p);
    rep.transferral_free = transferral_check(lattice).free;

    bool all_complete = true;
    long long checked = 0;
    IndexVector v(p, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == p - 1) {
            v[pos] = left;
            ++checked;
            IndexVector w = v;
            bool complete = false;
            for (int i = 0; i < p && !complete; ++i) {
                ++w[i];
                if (lattice.contains(w)) complete = true;
                --w[i];
            }
            if (!complete) all_complete = false;
            return;
        }
        for (int x = 0; x <= left; ++x) {
            v[pos] = x;
            self(self, pos + 1, left - x);
        }
    };
    rec(rec, 0, k - 1);
    rep.completion = all_complete;
    rep.completion_vectors_checked = checked;
    rep.pass = rep.transferral_free && rep.completion;
    return rep;
}

void ConstructionReport::add(const std::string& entry_name, const std::string& value,
                             std::optional<bool> ok) {
    entries.push_back({entry_name, value, ok});
    if (ok && !*ok) all_ok = false;
}

namespace {

std::string verdict(bool b) { return b ? "true" : "false"; }

}  // namespace

ConstructionReport check_mycroft(const MycroftConstruction& c, SearchBudget& budget) {
    ConstructionReport rep;
    rep.name = "mycroft";
    const Hypergraph& h = c.graph;
    rep.params = {{"k", h.k()}, {"n", h.n()}, {"p", c.p}};
    long long cod = min_degree(h, h.k() - 1);
    long long bound = h.n() / c.p - h.k();
    rep.add("min_codegree", std::to_string(cod), cod >= bound);
    int alpha = independence_number(h, budget);
    rep.add("independence_number", std::to_string(alpha), alpha < c.p * h.k());
    auto pm = has_perfect_matching(h, budget);
    rep.add("perfect_matching", verdict(pm.exists), !pm.exists);
    if (h.k() == 3) {
        bool free = is_induced_pattern_free(h, PatternGraph::K4minus());
        rep.add("induced_K4minus_free", verdict(free), free);
    }
    return rep;
}

ConstructionReport check_space_barrier(const Hypergraph& h, int m, std::uint64_t seed,
                                       SearchBudget& budget) {
    ConstructionReport rep;
    rep.name = "space-barrier";
    rep.params = {{"m", m}, {"n", h.n()}};
    rep.seed = seed;
    bool b_independent = true;
    bool edges_meet_a = true;
    for (const auto& e : h.edges()) {
        if (e[0] >= m) b_independent = false;
        if (e[0] >= m) edges_meet_a = false;
    }
    rep.add("B_independent", verdict(b_independent), b_independent);
    rep.add("every_edge_meets_A", verdict(edges_meet_a), edges_meet_a);
    bool free = is_induced_pattern_free(h, PatternGraph::K4minus());
    rep.add("induced_K4minus_free", verdict(free), free);
    rep.add("min_codegree", std::to_string(min_degree(h, 2)));
    if (h.n() <= 24) {
        Matching mm = max_matching(h, budget);
        rep.add("max_matching_size", std::to_string(mm.size()));
    }
    return rep;
}

ConstructionReport check_h1(const Hypergraph& h, std::uint64_t seed, SearchBudget&) {
    ConstructionReport rep;
    rep.name = "h1";
    rep.params = {{"n", h.n()}};
    rep.seed = seed;
    bool free = is_pattern_free(h, PatternGraph::K43());
    rep.add("K43_free", verdict(free), free);
    rep.add("min_codegree", std::to_string(min_degree(h, 2)));
    return rep;
}

ConstructionReport check_h2(const Hypergraph& h, std::uint64_t seed, SearchBudget&) {
    ConstructionReport rep;
    rep.name = "h2";
    rep.params = {{"n", h.n()}};
    rep.seed = seed;
    bool free = is_pattern_free(h, PatternGraph::K4minus());
    rep.add("K4minus_free", verdict(free), free);
    rep.add("min_codegree", std::to_string(min_degree(h, 2)));
    return rep;
}

ConstructionReport check_tiling_barrier(const Hypergraph& h, TilingBarrierKind kind,
                                        std::uint64_t seed, SearchBudget& budget) {
    ConstructionReport rep;
    rep.name = "tiling-barrier";
    rep.params = {{"n", h.n()}, {"A_size", h.n() / 4 - 1}};
    rep.seed = seed;
    const PatternGraph& pat =
        (kind == TilingBarrierKind::K43) ? PatternGraph::K43() : PatternGraph::K4minus();
    rep.add("pattern", pat.name());
    if (h.n() <= 24) {
        auto tiling = has_perfect_tiling(h, pat, budget);
        rep.add("perfect_tiling", verdict(tiling.exists), !tiling.exists);
    }
    rep.add("min_codegree", std::to_string(min_degree(h, 2)));
    return rep;
}

ConstructionReport check_parity_barrier(const Hypergraph& h, std::uint64_t seed,
                                        SearchBudget& budget) {
    ConstructionReport rep;
    rep.name = "parity-barrier";
    rep.params = {{"n", h.n()}};
    rep.seed = seed;
    bool free = is_pattern_free(h, PatternGraph::K43());
    rep.add("K43_free", verdict(free), free);
    auto pm = has_perfect_matching(h, budget);
    rep.add("perfect_matching", verdict(pm.exists), !pm.exists);
    rep.add("min_codegree", std::to_string(min_degree(h, 2)));
    return rep;
}

ConstructionReport check_cyclic_barrier(const Hypergraph& h, int m, SearchBudget& budget) {
    ConstructionReport rep;
    rep.name = "cyclic-barrier";
    rep.params = {{"m", m}, {"n", h.n()}};
    long long cod = min_degree(h, 2);
    rep.add("min_codegree", std::to_string(cod), cod == m - 1);
    bool free = is_pattern_free(h, PatternGraph::K43());
    rep.add("K43_free", verdict(free), free);
    auto pm = has_perfect_matching(h, budget);
    rep.add("perfect_matching", verdict(pm.exists), !pm.exists);

    // every edge must index as (2,1,0), (0,2,1) or (1,0,2) over the parts
    std::vector<std::vector<int>> parts(3);
    for (int i = 0; i < 3; ++i)
        for (int v = i * m; v < (i + 1) * m; ++v) parts[i].push_back(v);
    OrderedPartition part3(h.n(), parts);
    bool vectors_ok = true;
    for (const auto& e : h.edges()) {
        IndexVector iv = part3.index_vector(e);
        bool good = (iv == IndexVector{2, 1, 0}) || (iv == IndexVector{0, 2, 1}) ||
                    (iv == IndexVector{1, 0, 2});
        if (!good) vectors_ok = false;
    }
    rep.add("edge_index_vectors", verdict(vectors_ok), vectors_ok);

    // the coverage system 2a0 + a2 = 2a1 + a0 = 2a2 + a1 = m has no
    // nonnegative integer solution when 3 does not divide m
    bool solvable = false;
    for (int a0 = 0; 3 * a0 <= 3 * m && !solvable; ++a0) {
        for (int a1 = 0; a1 <= m && !solvable; ++a1) {
            for (int a2 = 0; a2 <= m && !solvable; ++a2) {
                if (2 * a0 + a2 == m && 2 * a1 + a0 == m && 2 * a2 + a1 == m) solvable = true;
            }
        }
    }
    rep.add("coverage_system_insoluble", verdict(!solvable), !solvable);
    return rep;
}

}  // namespace hm
