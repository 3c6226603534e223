#include "hm/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "hm/combinatorics.hpp"
#include "hm/errors.hpp"

namespace hm {

OrderedPartition::OrderedPartition(int n, std::vector<std::vector<int>> parts)
    : n_(n), parts_(std::move(parts)) {
    if (n_ < 1 || n_ > 64) throw std::invalid_argument("partition ground set out of range");
    part_of_.assign(n_, -1);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        auto& part = parts_[i];
        std::sort(part.begin(), part.end());
        for (int v : part) {
            if (v < 0 || v >= n_) throw std::invalid_argument("partition vertex out of range");
            if (part_of_[v] != -1) throw std::invalid_argument("partition parts overlap");
            part_of_[v] = static_cast<int>(i);
        }
    }
    for (int v = 0; v < n_; ++v)
        if (part_of_[v] == -1) throw std::invalid_argument("partition does not cover every vertex");
}

OrderedPartition OrderedPartition::trivial(int n) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return OrderedPartition(n, {all});
}

IndexVector OrderedPartition::index_vector(std::span<const int> s) const {
    IndexVector iv(parts_.size(), 0);
    for (int v : s) {
        if (v < 0 || v >= n_) throw std::invalid_argument("index_vector: vertex out of range");
        ++iv[part_of_[v]];
    }
    return iv;
}

IndexVector OrderedPartition::index_vector_mask(std::uint64_t m) const {
    IndexVector iv(parts_.size(), 0);
    while (m) {
        int v = std::countr_zero(m);
        m &= m - 1;
        if (v >= n_) throw std::invalid_argument("index_vector: vertex out of range");
        ++iv[part_of_[v]];
    }
    return iv;
}

IndexVector OrderedPartition::whole_vector() const {
    IndexVector iv(parts_.size(), 0);
    for (std::size_t i = 0; i < parts_.size(); ++i) iv[i] = static_cast<long long>(parts_[i].size());
    return iv;
}

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long long mod_pos(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

long long mod_inverse(long long a, long long p) {
    // extended euclid; p prime, a nonzero mod p
    long long t = 0, new_t = 1, r = p, new_r = mod_pos(a, p);
    while (new_r != 0) {
        long long q = r / new_r;
        long long tmp_t = t - q * new_t;
        t = new_t;
        new_t = tmp_t;
        long long tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    return mod_pos(t, p);
}

// Canonical integer Hermite normal form (row style): pivots positive,
// entries above a pivot reduced into [0, pivot).
void hnf_reduce(std::vector<IndexVector>& rows, int dim, std::vector<int>& pivots) {
    std::vector<IndexVector> work;
    for (auto& r : rows)
        if (std::any_of(r.begin(), r.end(), [](long long x) { return x != 0; })) work.push_back(r);
    rows.clear();
    pivots.clear();

    for (int col = 0; col < dim; ++col) {
        // gcd-eliminate until at most one working row is nonzero in this column
        while (true) {
            int best = -1;
            for (std::size_t i = 0; i < work.size(); ++i) {
                if (work[i][col] == 0) continue;
                if (best < 0 || std::llabs(work[i][col]) < std::llabs(work[best][col]))
                    best = static_cast<int>(i);
            }
            if (best < 0) break;
            bool others = false;
            for (std::size_t i = 0; i < work.size(); ++i) {
                if (static_cast<int>(i) == best || work[i][col] == 0) continue;
                others = true;
                long long q = floor_div(work[i][col], work[best][col]);
                for (int c = 0; c < dim; ++c) work[i][c] -= q * work[best][c];
            }
            if (!others) {
                // move the pivot row out
                IndexVector piv = work[best];
                if (piv[col] < 0)
                    for (auto& x : piv) x = -x;
                work.erase(work.begin() + best);
                rows.push_back(std::move(piv));
                pivots.push_back(col);
                break;
            }
        }
        // drop rows that became zero
        std::erase_if(work, [](const IndexVector& r) {
            return std::all_of(r.begin(), r.end(), [](long long x) { return x == 0; });
        });
    }
    // reduce entries above each pivot
    for (std::size_t i = 0; i < rows.size(); ++i) {
        long long p = rows[i][pivots[i]];
        for (std::size_t j = 0; j < i; ++j) {
            long long q = floor_div(rows[j][pivots[i]], p);
            if (q != 0)
                for (int c = 0; c < dim; ++c) rows[j][c] -= q * rows[i][c];
        }
    }
}

// Reduced row echelon form over Z_p with leading ones.
void rref_mod(std::vector<IndexVector>& rows, int dim, long long p, std::vector<int>& pivots) {
    for (auto& r : rows)
        for (auto& x : r) x = mod_pos(x, p);
    std::vector<IndexVector> result;
    pivots.clear();
    for (int col = 0; col < dim; ++col) {
        int sel = -1;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][col] != 0) {
                sel = static_cast<int>(i);
                break;
            }
        }
        if (sel < 0) continue;
        IndexVector piv = rows[sel];
        rows.erase(rows.begin() + sel);
        long long inv = mod_inverse(piv[col], p);
        for (auto& x : piv) x = mod_pos(x * inv, p);
        for (auto& r : rows) {
            if (r[col] == 0) continue;
            long long f = r[col];
            for (int c = 0; c < dim; ++c) r[c] = mod_pos(r[c] - f * piv[c], p);
        }
        for (auto& r : result) {
            if (r[col] == 0) continue;
            long long f = r[col];
            for (int c = 0; c < dim; ++c) r[c] = mod_pos(r[c] - f * piv[c], p);
        }
        result.push_back(std::move(piv));
        pivots.push_back(col);
        std::erase_if(rows, [](const IndexVector& r) {
            return std::all_of(r.begin(), r.end(), [](long long x) { return x == 0; });
        });
    }
    rows = std::move(result);
}

}  // namespace

IntegerLattice IntegerLattice::span(std::vector<IndexVector> generators, int dim,
                                    std::optional<int> modulus) {
    if (dim < 1) throw std::invalid_argument("lattice dimension must be positive");
    for (const auto& g : generators)
        if (static_cast<int>(g.size()) != dim)
            throw std::invalid_argument("generator has wrong dimension");
    if (modulus && *modulus < 2) throw std::invalid_argument("modulus must be at least 2");
    IntegerLattice l;
    l.dim_ = dim;
    l.modulus_ = modulus;
    l.basis_ = std::move(generators);
    if (modulus)
        rref_mod(l.basis_, dim, *modulus, l.pivots_);
    else
        hnf_reduce(l.basis_, dim, l.pivots_);
    return l;
}

bool IntegerLattice::contains(const IndexVector& v) const {
    if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("membership query has wrong dimension");
    IndexVector w = v;
    if (modulus_) {
        long long p = *modulus_;
        for (auto& x : w) x = mod_pos(x, p);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            long long f = w[pivots_[i]];
            if (f == 0) continue;
            for (int c = 0; c < dim_; ++c) w[c] = mod_pos(w[c] - f * basis_[i][c], p);
        }
    } else {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            long long x = w[pivots_[i]];
            long long p = basis_[i][pivots_[i]];
            if (x % p != 0) return false;
            long long q = x / p;
            if (q != 0)
                for (int c = 0; c < dim_; ++c) w[c] -= q * basis_[i][c];
        }
    }
    return std::all_of(w.begin(), w.end(), [](long long x) { return x == 0; });
}

TransferralCheck transferral_check(const IntegerLattice& l) {
    int d = l.dim();
    IndexVector v(d, 0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            std::fill(v.begin(), v.end(), 0);
            v[i] = 1;
            v[j] = -1;
            if (l.contains(v)) return {false, std::make_pair(i, j)};
        }
    }
    return {true, std::nullopt};
}

namespace {

template <class Fn>
void for_each_s_vector(int d, int s, Fn&& fn) {
    // nonnegative integer vectors of length d with coordinate sum s
    IndexVector v(d, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == d - 1) {
            v[pos] = left;
            fn(const_cast<const IndexVector&>(v));
            return;
        }
        for (int x = 0; x <= left; ++x) {
            v[pos] = x;
            self(self, pos + 1, left - x);
        }
    };
    if (d >= 1) rec(rec, 0, s);
}

}  // namespace

bool is_full(const IntegerLattice& l, int k) {
    if (!transferral_check(l).free) return false;
    int d = l.dim();
    bool all_complete = true;
    for_each_s_vector(d, k - 1, [&](const IndexVector& v) {
        if (!all_complete) return;
        bool complete = false;
        IndexVector w = v;
        for (int i = 0; i < d && !complete; ++i) {
            ++w[i];
            if (l.contains(w)) complete = true;
            --w[i];
        }
        if (!complete) all_complete = false;
    });
    return all_complete;
}

std::optional<long long> coset_group_order(const IntegerLattice& l, int k) {
    if (l.modulus()) throw std::invalid_argument("coset group is defined for integer lattices");
    if (k < 2) throw std::invalid_argument("coset group requires k >= 2");
    int d = l.dim();
    for (const auto& row : l.basis()) {
        long long sum = std::accumulate(row.begin(), row.end(), 0LL);
        if (mod_pos(sum, k) != 0)
            throw std::invalid_argument("lattice is not generated by k-vectors");
    }
    if (l.rank() < d) return std::nullopt;
    long long det_l = 1;
    for (int i = 0; i < d; ++i) det_l *= l.basis()[i][i];
    // the lattice of all k-vectors: u_i - u_{i+1} together with k u_d
    std::vector<IndexVector> max_gens;
    for (int i = 0; i + 1 < d; ++i) {
        IndexVector g(d, 0);
        g[i] = 1;
        g[i + 1] = -1;
        max_gens.push_back(g);
    }
    IndexVector last(d, 0);
    last[d - 1] = k;
    max_gens.push_back(last);
    IntegerLattice lmax = IntegerLattice::span(std::move(max_gens), d);
    long long det_max = 1;
    for (int i = 0; i < d; ++i) det_max *= lmax.basis()[i][i];
    if (det_l % det_max != 0)
        throw std::logic_error("lattice index computation: determinant mismatch");
    return det_l / det_max;
}

RobustVectorSet robust_edge_vectors(const Hypergraph& h, const OrderedPartition& p, double mu) {
    if (p.n() != h.n()) throw std::invalid_argument("partition does not match hypergraph");
    if (mu <= 0 || mu > 1) throw std::invalid_argument("mu must lie in (0, 1]");
    RobustVectorSet out;
    out.mu = mu;
    out.threshold = static_cast<long double>(mu) *
                    std::pow(static_cast<long double>(h.n()), static_cast<long double>(h.k()));
    for (std::size_t i = 0; i < h.edge_count(); ++i) ++out.counts[p.index_vector(h.edge(i))];
    for (const auto& [vec, cnt] : out.counts) {
        if (static_cast<long double>(cnt) >= out.threshold) out.vectors.push_back(vec);
    }
    out.any_robust = !out.vectors.empty();
    return out;
}

IntegerLattice robust_lattice(const Hypergraph& h, const OrderedPartition& p, double mu) {
    RobustVectorSet rv = robust_edge_vectors(h, p, mu);
    return IntegerLattice::span(rv.vectors, p.size());
}

namespace {

bool solubility_dfs(const Hypergraph& h, const OrderedPartition& p, const IntegerLattice& l,
                    int want, int from, std::uint64_t used, IndexVector& residual,
                    std::vector<int>& picked, SearchBudget& budget) {
    budget.charge();
    if (want == 0) return l.contains(residual);
    for (std::size_t ei = from; ei < h.edge_count(); ++ei) {
        std::uint64_t em = h.edge_mask(ei);
        if (em & used) continue;
        IndexVector iv = p.index_vector(h.edge(ei));
        for (std::size_t c = 0; c < iv.size(); ++c) residual[c] -= iv[c];
        picked.push_back(static_cast<int>(ei));
        if (solubility_dfs(h, p, l, want - 1, static_cast<int>(ei) + 1, used | em, residual,
                           picked, budget))
            return true;
        picked.pop_back();
        for (std::size_t c = 0; c < iv.size(); ++c) residual[c] += iv[c];
    }
    return false;
}

}  // namespace

SolubilityResult is_soluble(const Hypergraph& h, const OrderedPartition& p,
                            const IntegerLattice& l, SearchBudget& budget) {
    if (p.n() != h.n()) throw std::invalid_argument("partition does not match hypergraph");
    if (l.dim() != p.size()) throw std::invalid_argument("lattice dimension does not match partition");
    int d = p.size();
    for (int size = 0; size <= d - 1; ++size) {
        IndexVector residual = p.whole_vector();
        std::vector<int> picked;
        if (solubility_dfs(h, p, l, size, 0, 0, residual, picked, budget)) {
            Matching m;
            for (int ei : picked) m.edges.push_back(h.edge(ei));
            m.canonicalize();
            return {true, std::move(m)};
        }
    }
    return {false, std::nullopt};
}

bool is_gamma_extremal(const Hypergraph& h, double gamma, SearchBudget& budget) {
    if (gamma <= 0 || gamma >= 1) throw std::invalid_argument("gamma must lie in (0, 1)");
    long double needed = (1.0L - static_cast<long double>(gamma)) *
                         static_cast<long double>(h.k() - 1) / static_cast<long double>(h.k()) *
                         static_cast<long double>(h.n());
    int target = static_cast<int>(std::ceil(needed - 1e-12L));
    return has_independent_set(h, target, budget);
}

BarrierDiagnostics barrier_diagnostics(const Hypergraph& h, const OrderedPartition& p, double mu,
                                       SearchBudget& budget) {
    BarrierDiagnostics diag;
    diag.d = p.size();
    for (const auto& part : p.parts()) diag.part_sizes.push_back(static_cast<int>(part.size()));
    diag.robust = robust_edge_vectors(h, p, mu);
    IntegerLattice l = IntegerLattice::span(diag.robust.vectors, p.size());
    diag.lattice_basis = l.basis();
    auto tc = transferral_check(l);
    diag.transferral_free = tc.free;
    diag.violating_transferral = tc.violating;
    diag.full = is_full(l, h.k());
    diag.coset_order = coset_group_order(l, h.k());
    diag.whole_vector = p.whole_vector();
    diag.whole_in_lattice = l.contains(diag.whole_vector);
    auto sol = is_soluble(h, p, l, budget);
    diag.soluble = sol.soluble;
    diag.solution = sol.solution;
    return diag;
}

long long reachable_count(const Hypergraph& h, int u, int v, int i, SearchBudget& budget) {
    if (u == v) throw std::invalid_argument("reachable_count requires distinct vertices");
    if (u < 0 || u >= h.n() || v < 0 || v >= h.n())
        throw std::invalid_argument("reachable_count: vertex out of range");
    if (i < 1) throw std::invalid_argument("reachable_count requires i >= 1");
    if (i > 2) throw UnsupportedParameter("reachable_count supports only i in {1, 2}");
    int s = i * h.k() - 1;
    if (s > h.n() - 2) throw std::invalid_argument("reachable_count: set size exceeds n - 2");
    std::vector<int> others;
    for (int x = 0; x < h.n(); ++x)
        if (x != u && x != v) others.push_back(x);
    InducedMatchingOracle oracle(h);
    long long cnt = 0;
    std::uint64_t ub = std::uint64_t{1} << u, vb = std::uint64_t{1} << v;
    for_each_subset_of(others, s, [&](const std::vector<int>& set) {
        std::uint64_t m = mask_of(set);
        if (oracle.perfect_matching_on(m | ub, budget) &&
            oracle.perfect_matching_on(m | vb, budget))
            ++cnt;
    });
    return cnt;
}

}  // namespace hm
