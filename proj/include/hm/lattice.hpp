#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hm/budget.hpp"
#include "hm/hypergraph.hpp"
#include "hm/matching.hpp"

namespace hm {

using IndexVector = std::vector<long long>;

// Ordered partition of the vertex set; the order of the parts is part of the
// data.
class OrderedPartition {
  public:
    OrderedPartition(int n, std::vector<std::vector<int>> parts);

    static OrderedPartition trivial(int n);

    int n() const { return n_; }
    int size() const { return static_cast<int>(parts_.size()); }
    const std::vector<std::vector<int>>& parts() const { return parts_; }
    int part_of(int v) const { return part_of_[v]; }

    IndexVector index_vector(std::span<const int> s) const;
    IndexVector index_vector_mask(std::uint64_t m) const;
    IndexVector whole_vector() const;  // part sizes

  private:
    int n_;
    std::vector<std::vector<int>> parts_;
    std::vector<int> part_of_;
};

// Sublattice of Z^d in canonical Hermite-normal-form basis, or a subspace of
// Z_p^d in reduced row echelon form when a modulus is set.
class IntegerLattice {
  public:
    static IntegerLattice span(std::vector<IndexVector> generators, int dim,
                               std::optional<int> modulus = std::nullopt);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    std::optional<int> modulus() const { return modulus_; }
    const std::vector<IndexVector>& basis() const { return basis_; }
    const std::vector<int>& pivot_columns() const { return pivots_; }

    bool contains(const IndexVector& v) const;

  private:
    int dim_ = 0;
    std::optional<int> modulus_;
    std::vector<IndexVector> basis_;
    std::vector<int> pivots_;
};

struct TransferralCheck {
    bool free;
    std::optional<std::pair<int, int>> violating;  // (i, j) with u_i - u_j in L
};

TransferralCheck transferral_check(const IntegerLattice& l);
inline bool is_transferral_free(const IntegerLattice& l) { return transferral_check(l).free; }

// transferral-free and every (k-1)-vector completes into L by some unit vector
bool is_full(const IntegerLattice& l, int k);

// Index of L in the lattice of all vectors with coordinate sum divisible by
// k.  nullopt encodes an infinite index (rank-deficient L).  Requires L to be
// generated by k-vectors (all basis row sums divisible by k).
std::optional<long long> coset_group_order(const IntegerLattice& l, int k);

struct RobustVectorSet {
    double mu = 0;
    long double threshold = 0;                  // mu * n^k
    std::map<IndexVector, long long> counts;    // every realized index vector
    std::vector<IndexVector> vectors;           // the mu-robust ones, sorted
    bool any_robust = false;
};

RobustVectorSet robust_edge_vectors(const Hypergraph& h, const OrderedPartition& p, double mu);
IntegerLattice robust_lattice(const Hypergraph& h, const OrderedPartition& p, double mu);

struct SolubilityResult {
    bool soluble = false;
    std::optional<Matching> solution;
};

// Search for a matching of size < |P| whose removal puts the residual index
// vector into L; sizes tried in increasing order, edges in canonical order.
SolubilityResult is_soluble(const Hypergraph& h, const OrderedPartition& p,
                            const IntegerLattice& l, SearchBudget& budget);

// alpha(H) >= (1 - gamma) (k-1)/k n
bool is_gamma_extremal(const Hypergraph& h, double gamma, SearchBudget& budget);

struct BarrierDiagnostics {
    int d = 0;
    std::vector<int> part_sizes;
    RobustVectorSet robust;
    std::vector<IndexVector> lattice_basis;
    bool transferral_free = false;
    std::optional<std::pair<int, int>> violating_transferral;
    bool full = false;
    std::optional<long long> coset_order;  // nullopt = infinite
    IndexVector whole_vector;
    bool whole_in_lattice = false;
    bool soluble = false;
    std::optional<Matching> solution;
};

BarrierDiagnostics barrier_diagnostics(const Hypergraph& h, const OrderedPartition& p, double mu,
                                       SearchBudget& budget);

// Number of (ik-1)-sets S avoiding {u,v} such that both H[S + u] and
// H[S + v] have perfect matchings; supported for i in {1, 2}.
long long reachable_count(const Hypergraph& h, int u, int v, int i, SearchBudget& budget);

}  // namespace hm
