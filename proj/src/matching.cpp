#include "hm/matching.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

#include "hm/combinatorics.hpp"
#include "hm/errors.hpp"
#include "hm/rng.hpp"

namespace hm {

std::uint64_t Matching::covered_mask() const {
    std::uint64_t m = 0;
    for (const auto& e : edges) m |= mask_of(e);
    return m;
}

std::vector<int> Matching::uncovered(int n) const {
    std::uint64_t cov = covered_mask();
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (!(cov & (std::uint64_t{1} << v))) out.push_back(v);
    return out;
}

void Matching::canonicalize() {
    for (auto& e : edges) std::sort(e.begin(), e.end());
    std::sort(edges.begin(), edges.end());
}

std::uint64_t Tiling::covered_mask() const {
    std::uint64_t m = 0;
    for (const auto& c : copies) m |= mask_of(c.vertices);
    return m;
}

std::vector<int> Tiling::uncovered(int n) const {
    std::uint64_t cov = covered_mask();
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (!(cov & (std::uint64_t{1} << v))) out.push_back(v);
    return out;
}

bool validate_matching(const Hypergraph& h, const Matching& m, bool require_perfect,
                       std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    std::uint64_t seen = 0;
    for (const auto& e : m.edges) {
        if (!h.has_edge(e)) return fail("certificate edge is not an edge of the hypergraph");
        std::uint64_t em = mask_of(e);
        if (seen & em) return fail("certificate edges are not pairwise disjoint");
        seen |= em;
    }
    if (require_perfect && seen != h.full_mask())
        return fail("certificate does not cover every vertex");
    return true;
}

bool validate_tiling(const Hypergraph& h, const PatternGraph& f, const Tiling& t,
                     bool require_perfect, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    std::uint64_t seen = 0;
    std::vector<int> mapped(f.k());
    for (const auto& c : t.copies) {
        if (static_cast<int>(c.embedding.size()) != f.f())
            return fail("copy embedding has wrong size");
        std::uint64_t cm = mask_of(c.embedding);
        if (std::popcount(cm) != f.f()) return fail("copy embedding is not injective");
        if (cm != mask_of(c.vertices)) return fail("copy vertices disagree with embedding");
        for (const auto& pe : f.edges()) {
            for (int i = 0; i < f.k(); ++i) mapped[i] = c.embedding[pe[i]];
            if (!h.has_edge(mapped)) return fail("copy does not map a pattern edge onto an edge");
        }
        if (seen & cm) return fail("copies are not pairwise disjoint");
        seen |= cm;
    }
    if (require_perfect && seen != h.full_mask())
        return fail("tiling does not cover every vertex");
    return true;
}

namespace {

// Memo over uncovered-set masks.  Flat array up to 25 bits, hash map above.
class SubsetMemo {
  public:
    static constexpr std::int8_t kUnset = -1;

    explicit SubsetMemo(int n) {
        if (n <= 25) flat_.assign(std::size_t{1} << n, kUnset);
    }

    std::int8_t get(std::uint64_t m) const {
        if (!flat_.empty()) return flat_[m];
        auto it = map_.find(m);
        return it == map_.end() ? kUnset : it->second;
    }

    void set(std::uint64_t m, std::int8_t v) {
        if (!flat_.empty())
            flat_[m] = v;
        else
            map_[m] = v;
    }

  private:
    std::vector<std::int8_t> flat_;
    std::unordered_map<std::uint64_t, std::int8_t> map_;
};

// Decision search: can `uncovered` be partitioned into edges?  On success the
// chosen edge indices are appended during unwind (canonical-first path).
bool pm_rec(const Hypergraph& h, std::uint64_t uncovered, SubsetMemo& memo, SearchBudget& budget,
            std::vector<int>* picked) {
    if (uncovered == 0) return true;
    std::int8_t known = memo.get(uncovered);
    if (known == 0) return false;
    if (known == 1 && picked == nullptr) return true;
    budget.charge();
    int pivot = std::countr_zero(uncovered);
    for (int ei : h.incident_edges(pivot)) {
        std::uint64_t em = h.edge_mask(ei);
        if ((em & uncovered) != em) continue;
        if (pm_rec(h, uncovered ^ em, memo, budget, picked)) {
            if (picked) picked->push_back(ei);
            memo.set(uncovered, 1);
            return true;
        }
    }
    memo.set(uncovered, 0);
    return false;
}

}  // namespace

PerfectMatchingResult has_perfect_matching(const Hypergraph& h, SearchBudget& budget) {
    if (h.n() % h.k() != 0) return {false, std::nullopt};
    SubsetMemo memo(h.n());
    std::vector<int> picked;
    if (!pm_rec(h, h.full_mask(), memo, budget, &picked)) return {false, std::nullopt};
    Matching m;
    for (int ei : picked) m.edges.push_back(h.edge(ei));
    m.canonicalize();
    return {true, std::move(m)};
}

struct InducedMatchingOracle::Impl {
    const Hypergraph& h;
    SubsetMemo memo;
    explicit Impl(const Hypergraph& hh) : h(hh), memo(hh.n()) {}
};

InducedMatchingOracle::InducedMatchingOracle(const Hypergraph& h) : impl_(new Impl(h)) {}
InducedMatchingOracle::~InducedMatchingOracle() { delete impl_; }

bool InducedMatchingOracle::perfect_matching_on(std::uint64_t mask, SearchBudget& budget) {
    if (std::popcount(mask) % impl_->h.k() != 0) return false;
    return pm_rec(impl_->h, mask, impl_->memo, budget, nullptr);
}

namespace {

// Exact maximum matching size on `uncovered`; memoised, short-circuits at the
// floor(|U|/k) upper bound.
int mm_rec(const Hypergraph& h, std::uint64_t uncovered, SubsetMemo& memo, SearchBudget& budget) {
    if (uncovered == 0) return 0;
    std::int8_t known = memo.get(uncovered);
    if (known != SubsetMemo::kUnset) return known;
    budget.charge();
    int pivot = std::countr_zero(uncovered);
    int ub = std::popcount(uncovered) / h.k();
    int best = 0;
    if (ub > 0) {
        for (int ei : h.incident_edges(pivot)) {
            std::uint64_t em = h.edge_mask(ei);
            if ((em & uncovered) != em) continue;
            int v = 1 + mm_rec(h, uncovered ^ em, memo, budget);
            if (v > best) best = v;
            if (best == ub) break;
        }
    }
    if (best < ub) {
        int v = mm_rec(h, uncovered ^ (std::uint64_t{1} << pivot), memo, budget);
        if (v > best) best = v;
    }
    memo.set(uncovered, static_cast<std::int8_t>(best));
    return best;
}

}  // namespace

Matching max_matching(const Hypergraph& h, SearchBudget& budget) {
    SubsetMemo memo(h.n());
    std::uint64_t uncovered = h.full_mask();
    int target = mm_rec(h, uncovered, memo, budget);
    Matching m;
    // canonical descent: prefer the first edge attaining the optimum
    while (uncovered && target > 0) {
        int pivot = std::countr_zero(uncovered);
        bool took = false;
        for (int ei : h.incident_edges(pivot)) {
            std::uint64_t em = h.edge_mask(ei);
            if ((em & uncovered) != em) continue;
            if (1 + mm_rec(h, uncovered ^ em, memo, budget) == target) {
                m.edges.push_back(h.edge(ei));
                uncovered ^= em;
                --target;
                took = true;
                break;
            }
        }
        if (!took) uncovered ^= std::uint64_t{1} << pivot;
    }
    m.canonicalize();
    return m;
}

PatternCopies enumerate_pattern_copies(const Hypergraph& h, const PatternGraph& f) {
    if (f.k() != h.k()) throw InvalidPattern("pattern uniformity does not match hypergraph");
    PatternCopies out;
    out.by_vertex.assign(h.n(), {});
    if (f.f() > h.n()) return out;

    std::vector<std::vector<int>> host_edges;  // induced edges as index lists into W
    std::vector<std::uint32_t> host_bits;
    std::vector<int> perm(f.f());
    std::vector<int> sub;
    for_each_combination(h.n(), f.f(), [&](const std::vector<int>& w) {
        host_bits.clear();
        for_each_combination(f.f(), h.k(), [&](const std::vector<int>& idx) {
            sub.clear();
            for (int i : idx) sub.push_back(w[i]);
            if (h.has_edge(sub)) {
                std::uint32_t b = 0;
                for (int i : idx) b |= 1u << i;
                host_bits.push_back(b);
            }
        });
        if (host_bits.size() < f.edge_bits().size()) return;
        std::sort(host_bits.begin(), host_bits.end());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ok = true;
            for (std::uint32_t eb : f.edge_bits()) {
                std::uint32_t mapped = 0;
                for (int i = 0; i < f.f(); ++i)
                    if (eb & (1u << i)) mapped |= 1u << perm[i];
                if (!std::binary_search(host_bits.begin(), host_bits.end(), mapped)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                TilingCopy copy;
                copy.vertices = w;
                copy.embedding.resize(f.f());
                for (int i = 0; i < f.f(); ++i) copy.embedding[i] = w[perm[i]];
                int id = static_cast<int>(out.copies.size());
                out.masks.push_back(mask_of(w));
                out.copies.push_back(std::move(copy));
                for (int v : w) out.by_vertex[v].push_back(id);
                break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    });
    return out;
}

namespace {

bool tiling_rec(const PatternCopies& copies, std::uint64_t uncovered, SubsetMemo& memo,
                SearchBudget& budget, std::vector<int>* picked) {
    if (uncovered == 0) return true;
    std::int8_t known = memo.get(uncovered);
    if (known == 0) return false;
    if (known == 1 && picked == nullptr) return true;
    budget.charge();
    int pivot = std::countr_zero(uncovered);
    for (int ci : copies.by_vertex[pivot]) {
        std::uint64_t cm = copies.masks[ci];
        if ((cm & uncovered) != cm) continue;
        if (tiling_rec(copies, uncovered ^ cm, memo, budget, picked)) {
            if (picked) picked->push_back(ci);
            memo.set(uncovered, 1);
            return true;
        }
    }
    memo.set(uncovered, 0);
    return false;
}

}  // namespace

PerfectTilingResult has_perfect_tiling(const Hypergraph& h, const PatternGraph& f,
                                       SearchBudget& budget) {
    if (h.n() % f.f() != 0) return {false, std::nullopt};
    PatternCopies copies = enumerate_pattern_copies(h, f);
    SubsetMemo memo(h.n());
    std::vector<int> picked;
    if (!tiling_rec(copies, h.full_mask(), memo, budget, &picked)) return {false, std::nullopt};
    Tiling t;
    for (auto it = picked.rbegin(); it != picked.rend(); ++it) t.copies.push_back(copies.copies[*it]);
    std::sort(t.copies.begin(), t.copies.end(),
              [](const TilingCopy& a, const TilingCopy& b) { return a.vertices < b.vertices; });
    return {true, std::move(t)};
}

namespace {

void require_y_shape(const PatternGraph& f) {
    if (f.k() != 3 || f.f() != 4 || f.edges().size() != 2)
        throw InvalidPattern("local tiling search supports only the Y pattern");
    std::uint32_t inter = f.edge_bits()[0] & f.edge_bits()[1];
    if (std::popcount(inter) != 2)
        throw InvalidPattern("local tiling search supports only the Y pattern");
}

}  // namespace

Matching local_search_matching(const Hypergraph& h, std::optional<std::uint64_t> seed) {
    if (h.k() != 3) throw InvalidArity("local_search_matching requires a 3-graph");
    std::vector<int> order(h.edge_count());
    std::iota(order.begin(), order.end(), 0);
    if (seed) {
        Rng rng(*seed);
        rng.shuffle(order);
    }
    std::vector<int> chosen;  // edge indices
    std::uint64_t covered = 0;
    auto greedy_extend = [&]() {
        for (int ei : order) {
            if (!(h.edge_mask(ei) & covered)) {
                chosen.push_back(ei);
                covered |= h.edge_mask(ei);
            }
        }
    };
    greedy_extend();

    bool progressed = true;
    while (progressed) {
        progressed = false;
        std::uint64_t uncov = h.full_mask() & ~covered;
        for (std::size_t mi = 0; mi < chosen.size() && !progressed; ++mi) {
            const auto& e = h.edge(chosen[mi]);
            for (int a = 0; a < 3 && !progressed; ++a) {
                for (int b = 0; b < 3 && !progressed; ++b) {
                    if (a == b) continue;
                    int v1 = e[a], v2 = e[b];
                    // first extension: an edge through v1 otherwise inside U
                    for (int e1 : h.incident_edges(v1)) {
                        std::uint64_t m1 = h.edge_mask(e1);
                        if ((m1 & ~uncov) != (std::uint64_t{1} << v1)) continue;
                        std::uint64_t uncov2 = uncov & ~m1;
                        for (int e2 : h.incident_edges(v2)) {
                            std::uint64_t m2 = h.edge_mask(e2);
                            if ((m2 & ~uncov2) != (std::uint64_t{1} << v2)) continue;
                            // swap: e out, e1 and e2 in
                            covered &= ~h.edge_mask(chosen[mi]);
                            chosen.erase(chosen.begin() + static_cast<long>(mi));
                            chosen.push_back(e1);
                            chosen.push_back(e2);
                            covered |= m1 | m2;
                            progressed = true;
                            break;
                        }
                        if (progressed) break;
                    }
                }
            }
        }
        if (progressed) greedy_extend();
    }

    Matching m;
    for (int ei : chosen) m.edges.push_back(h.edge(ei));
    m.canonicalize();
    return m;
}

Tiling local_search_tiling(const Hypergraph& h, const PatternGraph& f,
                           std::optional<std::uint64_t> seed) {
    if (h.k() != 3) throw InvalidArity("local_search_tiling requires a 3-graph");
    require_y_shape(f);
    PatternCopies copies = enumerate_pattern_copies(h, f);
    std::vector<int> order(copies.copies.size());
    std::iota(order.begin(), order.end(), 0);
    if (seed) {
        Rng rng(*seed);
        rng.shuffle(order);
    }
    std::vector<int> chosen;
    std::uint64_t covered = 0;
    auto greedy_extend = [&]() {
        for (int ci : order) {
            if (!(copies.masks[ci] & covered)) {
                chosen.push_back(ci);
                covered |= copies.masks[ci];
            }
        }
    };
    greedy_extend();

    bool progressed = true;
    while (progressed) {
        progressed = false;
        std::uint64_t uncov = h.full_mask() & ~covered;
        for (std::size_t mi = 0; mi < chosen.size() && !progressed; ++mi) {
            const auto& verts = copies.copies[chosen[mi]].vertices;
            for (int a = 0; a < 4 && !progressed; ++a) {
                for (int b = 0; b < 4 && !progressed; ++b) {
                    if (a == b) continue;
                    int v1 = verts[a], v2 = verts[b];
                    for (int c1 : copies.by_vertex[v1]) {
                        std::uint64_t m1 = copies.masks[c1];
                        if ((m1 & ~uncov) != (std::uint64_t{1} << v1)) continue;
                        std::uint64_t uncov2 = uncov & ~m1;
                        for (int c2 : copies.by_vertex[v2]) {
                            std::uint64_t m2 = copies.masks[c2];
                            if ((m2 & ~uncov2) != (std::uint64_t{1} << v2)) continue;
                            covered &= ~copies.masks[chosen[mi]];
                            chosen.erase(chosen.begin() + static_cast<long>(mi));
                            chosen.push_back(c1);
                            chosen.push_back(c2);
                            covered |= m1 | m2;
                            progressed = true;
                            break;
                        }
                        if (progressed) break;
                    }
                }
            }
        }
        if (progressed) greedy_extend();
    }

    Tiling t;
    for (int ci : chosen) t.copies.push_back(copies.copies[ci]);
    std::sort(t.copies.begin(), t.copies.end(),
              [](const TilingCopy& a, const TilingCopy& b) { return a.vertices < b.vertices; });
    return t;
}

long long count_uncovered_degree(const Hypergraph& h, int v, std::span<const int> u) {
    if (h.k() != 3) throw InvalidArity("count_uncovered_degree requires a 3-graph");
    std::uint64_t um = mask_of(u);
    if (um & (std::uint64_t{1} << v))
        throw std::invalid_argument("count_uncovered_degree: v must not lie in U");
    long long cnt = 0;
    for (int ei : h.incident_edges(v)) {
        std::uint64_t rest = h.edge_mask(ei) & ~(std::uint64_t{1} << v);
        if ((rest & um) == rest) ++cnt;
    }
    return cnt;
}

bool matching_is_maximal(const Hypergraph& h, const Matching& m) {
    std::uint64_t uncov = h.full_mask() & ~m.covered_mask();
    for (std::size_t i = 0; i < h.edge_count(); ++i)
        if ((h.edge_mask(i) & uncov) == h.edge_mask(i)) return false;
    return true;
}

bool matching_is_swap_stable(const Hypergraph& h, const Matching& m) {
    std::uint64_t uncov = h.full_mask() & ~m.covered_mask();
    for (const auto& e : m.edges) {
        for (int a : e) {
            for (int b : e) {
                if (a == b) continue;
                for (int e1 : h.incident_edges(a)) {
                    std::uint64_t m1 = h.edge_mask(e1);
                    if ((m1 & ~uncov) != (std::uint64_t{1} << a)) continue;
                    for (int e2 : h.incident_edges(b)) {
                        std::uint64_t m2 = h.edge_mask(e2);
                        if ((m2 & ~(uncov & ~m1)) != (std::uint64_t{1} << b)) continue;
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

bool tiling_is_maximal(const Hypergraph& h, const PatternGraph& f, const Tiling& t) {
    PatternCopies copies = enumerate_pattern_copies(h, f);
    std::uint64_t uncov = h.full_mask() & ~t.covered_mask();
    for (std::uint64_t cm : copies.masks)
        if ((cm & uncov) == cm) return false;
    return true;
}

bool tiling_is_swap_stable(const Hypergraph& h, const PatternGraph& f, const Tiling& t) {
    PatternCopies copies = enumerate_pattern_copies(h, f);
    std::uint64_t uncov = h.full_mask() & ~t.covered_mask();
    for (const auto& copy : t.copies) {
        for (int a : copy.vertices) {
            for (int b : copy.vertices) {
                if (a == b) continue;
                for (int c1 : copies.by_vertex[a]) {
                    std::uint64_t m1 = copies.masks[c1];
                    if ((m1 & ~uncov) != (std::uint64_t{1} << a)) continue;
                    for (int c2 : copies.by_vertex[b]) {
                        std::uint64_t m2 = copies.masks[c2];
                        if ((m2 & ~(uncov & ~m1)) != (std::uint64_t{1} << b)) continue;
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

}  // namespace hm
