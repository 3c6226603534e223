#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hm {

inline std::uint64_t binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    if (r > n - r) r = n - r;
    std::uint64_t acc = 1;
    for (int i = 1; i <= r; ++i) {
        acc = acc * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
    }
    return acc;
}

// Visit all r-subsets of {0,...,n-1} in lexicographic order.  The visitor
// receives a reference to the current combination; it must not keep it.
template <class Fn>
void for_each_combination(int n, int r, Fn&& fn) {
    if (r < 0 || r > n) return;
    std::vector<int> combo(r);
    for (int i = 0; i < r; ++i) combo[i] = i;
    while (true) {
        fn(const_cast<const std::vector<int>&>(combo));
        int i = r - 1;
        while (i >= 0 && combo[i] == n - r + i) --i;
        if (i < 0) break;
        ++combo[i];
        for (int j = i + 1; j < r; ++j) combo[j] = combo[j - 1] + 1;
    }
}

// Same but over the entries of a fixed (sorted) item list.
template <class Fn>
void for_each_subset_of(const std::vector<int>& items, int r, Fn&& fn) {
    int n = static_cast<int>(items.size());
    std::vector<int> picked(static_cast<std::size_t>(r > 0 ? r : 0));
    for_each_combination(n, r, [&](const std::vector<int>& idx) {
        for (int i = 0; i < r; ++i) picked[i] = items[idx[i]];
        fn(const_cast<const std::vector<int>&>(picked));
    });
}

inline std::uint64_t mask_of(std::span<const int> vs) {
    std::uint64_t m = 0;
    for (int v : vs) {
        if (v < 0 || v >= 64) throw std::invalid_argument("vertex id out of [0, 64)");
        m |= std::uint64_t{1} << v;
    }
    return m;
}

inline std::vector<int> vertices_of_mask(std::uint64_t m) {
    std::vector<int> vs;
    while (m) {
        int v = std::countr_zero(m);
        vs.push_back(v);
        m &= m - 1;
    }
    return vs;
}

}  // namespace hm
