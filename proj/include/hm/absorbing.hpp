#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hm/hypergraph.hpp"
#include "hm/matching.hpp"

namespace hm {

// Witness that edge e absorbs the (k+1)-set S: disjoint edges e1, e2 with
// |e1 cap S| = k-1, |e1 cap e| = 1, |e2 cap S| = 2, |e2 cap e| = k-2.
struct AbsorbingWitness {
    std::vector<int> e;
    std::vector<int> e1;
    std::vector<int> e2;
    std::vector<int> s;

    bool revalidate(const Hypergraph& h) const;
};

std::optional<AbsorbingWitness> find_absorbing_witness(const Hypergraph& h,
                                                       std::span<const int> e,
                                                       std::span<const int> s);
bool is_absorbing(const Hypergraph& h, std::span<const int> e, std::span<const int> s);

// |{e in E : e disjoint from S, e is S-absorbing}|, exact.
long long count_absorbing(const Hypergraph& h, std::span<const int> s);

struct AbsorbingFamily {
    Matching family;
    double beta = 0;
    std::uint64_t seed = 0;
};

struct SampledAbsorbingCount {
    std::vector<int> s;
    long long count;
};

struct FamilyReport {
    std::size_t family_size = 0;
    std::size_t sampled_s_count = 0;
    long long min_count = 0;
    double median_count = 0;
    std::vector<SampledAbsorbingCount> samples;
    std::vector<std::vector<int>> failures;  // sampled S with zero absorbers in the family
};

// Samples each edge independently with probability p = beta * n^(1-k), then
// resolves conflicts by keeping the canonically first edge of each
// intersecting pair.  Always returns a valid matching.
AbsorbingFamily build_absorbing_family(const Hypergraph& h, double beta, std::uint64_t seed);

// Exact S-absorbing counts within the family for `sample_count` seeded
// random (k+1)-sets.
FamilyReport sample_family_counts(const Hypergraph& h, const AbsorbingFamily& family,
                                  std::size_t sample_count, std::uint64_t seed);

// Replaces one S-absorbing edge of M (first in canonical order) by its
// witness pair; the result covers V(M) and S except one vertex of the
// replaced edge.  Throws NoAbsorberError when M contains no absorber.
Matching absorb_once(const Hypergraph& h, const Matching& m, std::span<const int> s);

struct AbsorbResult {
    Matching matching;
    bool completed = false;         // uncovered count reduced to <= k
    int rounds = 0;
    std::vector<int> uncovered;     // final uncovered vertices
    std::optional<std::vector<int>> failed_s;  // set that found no absorber
};

// Repeatedly groups the first k+1 uncovered vertices and absorbs them with a
// fresh edge of the family until at most k vertices remain uncovered.
AbsorbResult absorb_all(const Hypergraph& h, const AbsorbingFamily& family, const Matching& rest);

}  // namespace hm
