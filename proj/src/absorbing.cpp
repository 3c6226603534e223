#include "hm/absorbing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "hm/combinatorics.hpp"
#include "hm/errors.hpp"
#include "hm/rng.hpp"

namespace hm {

namespace {

std::uint64_t checked_set_mask(const Hypergraph& h, std::span<const int> vs, const char* what) {
    std::uint64_t m = mask_of(vs);
    if (std::popcount(m) != static_cast<int>(vs.size()))
        throw std::invalid_argument(std::string(what) + ": repeated vertex");
    if (m & ~h.full_mask())
        throw std::invalid_argument(std::string(what) + ": vertex out of range");
    return m;
}

void check_absorbing_args(const Hypergraph& h, std::span<const int> e, std::span<const int> s) {
    if (static_cast<int>(s.size()) != h.k() + 1)
        throw std::invalid_argument("absorbing set must have k+1 vertices");
    std::uint64_t em = checked_set_mask(h, e, "absorbing edge");
    std::uint64_t sm = checked_set_mask(h, s, "absorbing set");
    if (!h.has_edge(e)) throw std::invalid_argument("absorbing edge is not an edge");
    if (em & sm) throw std::invalid_argument("absorbing edge must be disjoint from S");
}

}  // namespace

bool AbsorbingWitness::revalidate(const Hypergraph& h) const {
    std::uint64_t em = mask_of(e), m1 = mask_of(e1), m2 = mask_of(e2), sm = mask_of(s);
    if (!h.has_edge(e) || !h.has_edge(e1) || !h.has_edge(e2)) return false;
    if (em & sm) return false;
    if (m1 & m2) return false;
    int k = h.k();
    return std::popcount(m1 & sm) == k - 1 && std::popcount(m1 & em) == 1 &&
           std::popcount(m2 & sm) == 2 && std::popcount(m2 & em) == k - 2;
}

std::optional<AbsorbingWitness> find_absorbing_witness(const Hypergraph& h,
                                                       std::span<const int> e,
                                                       std::span<const int> s) {
    check_absorbing_args(h, e, s);
    int k = h.k();
    std::vector<int> sv(s.begin(), s.end());
    std::vector<int> ev(e.begin(), e.end());
    std::sort(sv.begin(), sv.end());
    std::sort(ev.begin(), ev.end());

    std::optional<AbsorbingWitness> hit;
    // e1 = (k-1 vertices of S) + (1 vertex of e); e2 = (the 2 remaining
    // vertices of S) + (k-2 of the remaining vertices of e)
    for_each_subset_of(sv, k - 1, [&](const std::vector<int>& s_part) {
        if (hit) return;
        std::vector<int> s_rest;
        std::set_difference(sv.begin(), sv.end(), s_part.begin(), s_part.end(),
                            std::back_inserter(s_rest));
        for (int x : ev) {
            if (hit) break;
            std::vector<int> e1 = s_part;
            e1.push_back(x);
            if (!h.has_edge(e1)) continue;
            std::vector<int> e_rest;
            for (int y : ev)
                if (y != x) e_rest.push_back(y);
            for_each_subset_of(e_rest, k - 2, [&](const std::vector<int>& e_part) {
                if (hit) return;
                std::vector<int> e2 = s_rest;
                e2.insert(e2.end(), e_part.begin(), e_part.end());
                if (!h.has_edge(e2)) return;
                AbsorbingWitness w;
                w.e = ev;
                w.e1 = e1;
                std::sort(w.e1.begin(), w.e1.end());
                w.e2 = e2;
                std::sort(w.e2.begin(), w.e2.end());
                w.s = sv;
                hit = std::move(w);
            });
        }
    });
    return hit;
}

bool is_absorbing(const Hypergraph& h, std::span<const int> e, std::span<const int> s) {
    return find_absorbing_witness(h, e, s).has_value();
}

long long count_absorbing(const Hypergraph& h, std::span<const int> s) {
    if (static_cast<int>(s.size()) != h.k() + 1)
        throw std::invalid_argument("absorbing set must have k+1 vertices");
    std::uint64_t sm = checked_set_mask(h, s, "absorbing set");
    long long cnt = 0;
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        if (h.edge_mask(i) & sm) continue;
        if (is_absorbing(h, h.edge(i), s)) ++cnt;
    }
    return cnt;
}

AbsorbingFamily build_absorbing_family(const Hypergraph& h, double beta, std::uint64_t seed) {
    if (beta <= 0) throw std::invalid_argument("beta must be positive");
    double p = beta * std::pow(static_cast<double>(h.n()), 1 - h.k());
    if (p > 1) throw std::invalid_argument("edge probability beta * n^(1-k) exceeds 1");
    Rng rng(seed);
    std::vector<int> picked;
    for (std::size_t i = 0; i < h.edge_count(); ++i)
        if (rng.bernoulli(p)) picked.push_back(static_cast<int>(i));
    // keep the canonically first edge of every intersecting pair
    AbsorbingFamily fam;
    fam.beta = beta;
    fam.seed = seed;
    std::uint64_t used = 0;
    for (int ei : picked) {
        std::uint64_t em = h.edge_mask(ei);
        if (em & used) continue;
        used |= em;
        fam.family.edges.push_back(h.edge(ei));
    }
    fam.family.canonicalize();
    return fam;
}

FamilyReport sample_family_counts(const Hypergraph& h, const AbsorbingFamily& family,
                                  std::size_t sample_count, std::uint64_t seed) {
    FamilyReport rep;
    rep.family_size = family.family.size();
    Rng rng(seed);
    int k1 = h.k() + 1;
    std::vector<long long> counts;
    for (std::size_t t = 0; t < sample_count; ++t) {
        // seeded random (k+1)-set
        std::vector<int> pool(h.n());
        std::iota(pool.begin(), pool.end(), 0);
        rng.shuffle(pool);
        std::vector<int> s(pool.begin(), pool.begin() + k1);
        std::sort(s.begin(), s.end());
        std::uint64_t sm = mask_of(s);
        long long c = 0;
        for (const auto& e : family.family.edges) {
            if (mask_of(e) & sm) continue;
            if (is_absorbing(h, e, s)) ++c;
        }
        rep.samples.push_back({s, c});
        counts.push_back(c);
        if (c == 0) rep.failures.push_back(s);
    }
    rep.sampled_s_count = sample_count;
    if (!counts.empty()) {
        std::sort(counts.begin(), counts.end());
        rep.min_count = counts.front();
        std::size_t mid = counts.size() / 2;
        rep.median_count = counts.size() % 2 ? static_cast<double>(counts[mid])
                                             : (counts[mid - 1] + counts[mid]) / 2.0;
    }
    return rep;
}

Matching absorb_once(const Hypergraph& h, const Matching& m, std::span<const int> s) {
    if (static_cast<int>(s.size()) != h.k() + 1)
        throw std::invalid_argument("absorbing set must have k+1 vertices");
    std::uint64_t sm = checked_set_mask(h, s, "absorbing set");
    if (m.covered_mask() & sm)
        throw std::invalid_argument("absorbing set intersects the matching");
    for (std::size_t i = 0; i < m.edges.size(); ++i) {
        auto witness = find_absorbing_witness(h, m.edges[i], s);
        if (!witness) continue;
        Matching out = m;
        out.edges.erase(out.edges.begin() + static_cast<long>(i));
        out.edges.push_back(witness->e1);
        out.edges.push_back(witness->e2);
        out.canonicalize();
        return out;
    }
    throw NoAbsorberError("no edge of the matching absorbs the given set");
}

AbsorbResult absorb_all(const Hypergraph& h, const AbsorbingFamily& family, const Matching& rest) {
    if (family.family.covered_mask() & rest.covered_mask())
        throw std::invalid_argument("absorbing family and rest matching intersect");
    AbsorbResult res;
    // family edges are the absorber pool; replacements are not reused
    std::vector<std::vector<int>> edges = family.family.edges;
    std::vector<bool> available(edges.size(), true);
    for (const auto& e : rest.edges) {
        edges.push_back(e);
        available.push_back(false);
    }
    std::uint64_t covered = 0;
    for (const auto& e : edges) covered |= mask_of(e);

    int k = h.k();
    while (true) {
        std::vector<int> uncovered;
        for (int v = 0; v < h.n(); ++v)
            if (!(covered & (std::uint64_t{1} << v))) uncovered.push_back(v);
        if (static_cast<int>(uncovered.size()) <= k) {
            res.completed = true;
            res.uncovered = uncovered;
            break;
        }
        std::vector<int> s(uncovered.begin(), uncovered.begin() + (k + 1));
        bool absorbed = false;
        for (std::size_t i = 0; i < edges.size() && !absorbed; ++i) {
            if (!available[i]) continue;
            auto witness = find_absorbing_witness(h, edges[i], s);
            if (!witness) continue;
            covered &= ~mask_of(edges[i]);
            edges.erase(edges.begin() + static_cast<long>(i));
            available.erase(available.begin() + static_cast<long>(i));
            edges.push_back(witness->e1);
            available.push_back(false);
            edges.push_back(witness->e2);
            available.push_back(false);
            covered |= mask_of(witness->e1) | mask_of(witness->e2);
            ++res.rounds;
            absorbed = true;
        }
        if (!absorbed) {
            res.completed = false;
            res.failed_s = s;
            res.uncovered = uncovered;
            break;
        }
    }
    res.matching.edges = edges;
    res.matching.canonicalize();
    return res;
}

}  // namespace hm
