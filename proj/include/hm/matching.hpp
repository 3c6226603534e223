#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hm/budget.hpp"
#include "hm/hypergraph.hpp"

namespace hm {

// A set of pairwise disjoint edges, kept in canonical (sorted) order.
struct Matching {
    std::vector<std::vector<int>> edges;

    std::size_t size() const { return edges.size(); }
    std::uint64_t covered_mask() const;
    std::vector<int> uncovered(int n) const;
    void canonicalize();
};

struct TilingCopy {
    std::vector<int> vertices;   // sorted
    std::vector<int> embedding;  // pattern vertex i -> host vertex
};

struct Tiling {
    std::vector<TilingCopy> copies;

    std::size_t size() const { return copies.size(); }
    std::uint64_t covered_mask() const;
    std::vector<int> uncovered(int n) const;
};

// Plain re-validation, independent of any search code path.
bool validate_matching(const Hypergraph& h, const Matching& m, bool require_perfect,
                       std::string* why = nullptr);
bool validate_tiling(const Hypergraph& h, const PatternGraph& f, const Tiling& t,
                     bool require_perfect, std::string* why = nullptr);

struct PerfectMatchingResult {
    bool exists;
    std::optional<Matching> certificate;
};

// Exhaustive backtracking with memoisation on the uncovered vertex set.
// Pivots on the least uncovered vertex, tries incident edges in canonical
// order.  Returns false immediately when k does not divide n.
PerfectMatchingResult has_perfect_matching(const Hypergraph& h, SearchBudget& budget);

// Perfect matching of the induced subgraph on `mask`, sharing one memo per
// budget-holder across calls; used by the reachability counters.
class InducedMatchingOracle {
  public:
    explicit InducedMatchingOracle(const Hypergraph& h);
    ~InducedMatchingOracle();
    InducedMatchingOracle(const InducedMatchingOracle&) = delete;
    InducedMatchingOracle& operator=(const InducedMatchingOracle&) = delete;
    bool perfect_matching_on(std::uint64_t mask, SearchBudget& budget);

  private:
    struct Impl;
    Impl* impl_;
};

// Exact maximum matching (memoised branch and bound with the floor(|U|/k)
// upper bound).  Returns a canonical certificate.
Matching max_matching(const Hypergraph& h, SearchBudget& budget);

struct PerfectTilingResult {
    bool exists;
    std::optional<Tiling> certificate;
};

// All vertex sets that carry a spanning copy of F, with one canonical
// embedding each, in lexicographic order of the vertex set.
struct PatternCopies {
    std::vector<std::uint64_t> masks;
    std::vector<TilingCopy> copies;
    std::vector<std::vector<int>> by_vertex;  // vertex -> copy indices
};
PatternCopies enumerate_pattern_copies(const Hypergraph& h, const PatternGraph& f);

PerfectTilingResult has_perfect_tiling(const Hypergraph& h, const PatternGraph& f,
                                       SearchBudget& budget);

// Greedy maximal matching followed by exhaustive 1-to-2 swaps: a matching
// edge with two vertices separately extendable into the uncovered set is
// replaced by those two extensions.  3-graphs only.  Without a seed the scan
// order is canonical; a seed shuffles it.
Matching local_search_matching(const Hypergraph& h,
                               std::optional<std::uint64_t> seed = std::nullopt);

// Same swap scheme on copies of Y.
Tiling local_search_tiling(const Hypergraph& h, const PatternGraph& f,
                           std::optional<std::uint64_t> seed = std::nullopt);

// |N(v) intersect pairs of U|; equals the edge count of link_graph(h, v, U).
long long count_uncovered_degree(const Hypergraph& h, int v, std::span<const int> u);

// true when no edge of H lies entirely inside the uncovered set
bool matching_is_maximal(const Hypergraph& h, const Matching& m);
// true when no 1-to-2 swap applies (exhaustive scan)
bool matching_is_swap_stable(const Hypergraph& h, const Matching& m);
bool tiling_is_maximal(const Hypergraph& h, const PatternGraph& f, const Tiling& t);
bool tiling_is_swap_stable(const Hypergraph& h, const PatternGraph& f, const Tiling& t);

}  // namespace hm
