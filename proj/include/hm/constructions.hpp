#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hm/budget.hpp"
#include "hm/hypergraph.hpp"
#include "hm/lattice.hpp"

namespace hm {

// Orientation of every pair of {0,...,n-1}.
class Tournament {
  public:
    static Tournament random(int n, std::uint64_t seed);
    static Tournament transitive(int n);  // every arrow from smaller to larger

    int n() const { return n_; }
    bool points_to(int from, int to) const;

  private:
    Tournament(int n) : n_(n), toward_min_(static_cast<std::size_t>(n) * n, false) {}
    int n_;
    std::vector<bool> toward_min_;  // pair (i<j): true means arrow j -> i
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
};

struct MycroftConstruction {
    Hypergraph graph;
    OrderedPartition partition;
    IntegerLattice lattice;  // the mod-p lattice defining the edge set
    int p = 0;
};

// k-graph whose edges are the k-sets with index vector in the mod-p lattice
// spanned by v_i = u_i + (i-1) u_p, over a near-balanced partition chosen so
// the whole-set index vector stays outside the lattice.
MycroftConstruction gen_mycroft(int k, int n);

// H(m, n): vertices A = {0..m-1} and B = rest; all triples inside A, plus,
// per a in A, all triples {a, b1, b2} across a seeded balanced bipartition
// of B.
Hypergraph gen_space_barrier(int m, int n, std::uint64_t seed);

// Triples {x,y,z} with x<y<z such that exactly one of {x,y}, {x,z} is
// directed toward x.
Hypergraph gen_h1(const Tournament& t);
Hypergraph gen_h1(int n, std::uint64_t seed);

// Triples spanning a cyclic triangle.
Hypergraph gen_h2(const Tournament& t);
Hypergraph gen_h2(int n, std::uint64_t seed);

enum class TilingBarrierKind { K43, K4minus };

// |A| = n/4 - 1; all triples meeting A, plus H1 (for K43) or H2 (for
// K4minus) on B.
Hypergraph gen_tiling_barrier(int n, TilingBarrierKind kind, std::uint64_t seed);

// V2 of odd size in [n/3, n/3+1]; triples with one vertex in V1 and two in
// V2, plus H1 on V1.
Hypergraph gen_parity_barrier(int n, std::uint64_t seed);

// Three parts of size m (3 must not divide m); triples with two vertices in
// V_i and one in V_{i+1}, indices cyclic.
Hypergraph gen_cyclic_barrier(int m);

struct Claim41Report {
    int p = 0;
    int k = 0;
    bool transferral_free = false;
    bool completion = false;
    long long completion_vectors_checked = 0;
    bool pass = false;
};

// Exhaustive check over Z_p^p that the mod-p lattice above is
// transferral-free and that every (k-1)-vector completes into it.
Claim41Report verify_claim_41(int p, int k);

struct CheckEntry {
    std::string name;
    std::string value;
    std::optional<bool> ok;  // nullopt = reported, not asserted
};

struct ConstructionReport {
    std::string name;
    std::map<std::string, long long> params;
    std::optional<std::uint64_t> seed;
    std::vector<CheckEntry> entries;
    bool all_ok = true;

    void add(const std::string& name, const std::string& value,
             std::optional<bool> ok = std::nullopt);
};

ConstructionReport check_mycroft(const MycroftConstruction& c, SearchBudget& budget);
ConstructionReport check_space_barrier(const Hypergraph& h, int m, std::uint64_t seed,
                                       SearchBudget& budget);
ConstructionReport check_h1(const Hypergraph& h, std::uint64_t seed, SearchBudget& budget);
ConstructionReport check_h2(const Hypergraph& h, std::uint64_t seed, SearchBudget& budget);
ConstructionReport check_tiling_barrier(const Hypergraph& h, TilingBarrierKind kind,
                                        std::uint64_t seed, SearchBudget& budget);
ConstructionReport check_parity_barrier(const Hypergraph& h, std::uint64_t seed,
                                        SearchBudget& budget);
ConstructionReport check_cyclic_barrier(const Hypergraph& h, int m, SearchBudget& budget);

int smallest_prime_factor(int k);

}  // namespace hm
