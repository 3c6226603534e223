#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "hm/budget.hpp"
#include "hm/rational.hpp"

namespace hm {

// k-uniform hypergraph on vertices 0..n-1.  Edges are stored canonically:
// each edge sorted ascending, the edge list sorted lexicographically.
// Immutable after construction; n is capped at 64 so vertex sets fit in a
// machine word.
class Hypergraph {
  public:
    Hypergraph(int n, int k, std::vector<std::vector<int>> edges);

    static Hypergraph complete(int n, int k);
    static Hypergraph edgeless(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    const std::vector<std::vector<int>>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<int>& edge(std::size_t i) const { return edges_[i]; }
    std::uint64_t edge_mask(std::size_t i) const { return edge_masks_[i]; }
    bool has_edge_mask(std::uint64_t m) const { return edge_mask_set_.count(m) > 0; }
    bool has_edge(std::span<const int> vs) const;
    // indices of edges containing v, in canonical edge order
    const std::vector<int>& incident_edges(int v) const { return incident_[v]; }
    std::uint64_t full_mask() const {
        return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    }

  private:
    int n_;
    int k_;
    std::vector<std::vector<int>> edges_;
    std::vector<std::uint64_t> edge_masks_;
    std::unordered_set<std::uint64_t> edge_mask_set_;
    std::vector<std::vector<int>> incident_;
};

// Small pattern k-graph used as a tiling unit or induced-subgraph probe.
// At most 6 vertices, so isomorphism is checked by brute-force permutation.
class PatternGraph {
  public:
    PatternGraph(int f, int k, std::vector<std::vector<int>> edges, std::string name = "");

    static const PatternGraph& Y();        // 4 vertices, 2 edges
    static const PatternGraph& K4minus();  // 4 vertices, 3 edges
    static const PatternGraph& K43();      // 4 vertices, 4 edges
    static const PatternGraph* builtin(const std::string& name);  // nullptr if unknown

    int f() const { return f_; }
    int k() const { return k_; }
    const std::vector<std::vector<int>>& edges() const { return edges_; }
    // edges as f-bit masks, sorted
    const std::vector<std::uint32_t>& edge_bits() const { return edge_bits_; }
    const std::string& name() const { return name_; }

  private:
    int f_;
    int k_;
    std::vector<std::vector<int>> edges_;
    std::vector<std::uint32_t> edge_bits_;
    std::string name_;
};

// Ordinary graph on an explicit ground set, as produced by link queries.
struct LinkGraph {
    std::vector<int> ground;                  // sorted
    std::vector<std::pair<int, int>> pairs;   // (a,b) with a<b, lex sorted
};

// |{T : S cup T in E, T disjoint from S}|; requires 1 <= |S| <= k-1.
long long degree(const Hypergraph& h, std::span<const int> s);

// minimum of degree() over all d-subsets
long long min_degree(const Hypergraph& h, int d);

// Exact maximum size of an edge-free vertex set, by branch and bound over
// the natural vertex order.  Optionally reports one maximum set.
int independence_number(const Hypergraph& h, SearchBudget& budget,
                        std::vector<int>* witness = nullptr);

// true once some independent set of size >= target is found; exhaustive
// otherwise.  Shares the branch-and-bound with independence_number.
bool has_independent_set(const Hypergraph& h, int target, SearchBudget& budget);

// Induced containment: returns a vertex set W with H[W] isomorphic to F,
// or nullopt if none exists.
std::optional<std::vector<int>> find_induced_pattern(const Hypergraph& h, const PatternGraph& f);
inline bool is_induced_pattern_free(const Hypergraph& h, const PatternGraph& f) {
    return !find_induced_pattern(h, f).has_value();
}

// Subgraph containment: edges of F must be present, non-edges unconstrained.
std::optional<std::vector<int>> find_pattern(const Hypergraph& h, const PatternGraph& f);
inline bool is_pattern_free(const Hypergraph& h, const PatternGraph& f) {
    return !find_pattern(h, f).has_value();
}

// Graph on U whose edges are the pairs {a,b} with {v,a,b} in E(H); k = 3 only.
LinkGraph link_graph(const Hypergraph& h, int v, std::span<const int> u);

long long count_triangles(const LinkGraph& g);

// m(4m - n^2)/(3n) as an exact rational
Rational goodman_bound(long long n, long long m);

}  // namespace hm
