#pragma once

#include <cstdint>

#include "hm/errors.hpp"

namespace hm {

// Node budget for exact searches.  Every search node charges one unit; when
// the budget runs out the search aborts with BudgetExhausted instead of
// returning a possibly wrong answer.
class SearchBudget {
  public:
    static constexpr std::uint64_t kDefaultNodes = 400'000'000ULL;

    explicit SearchBudget(std::uint64_t max_nodes = kDefaultNodes) : max_nodes_(max_nodes) {}

    void charge(std::uint64_t cost = 1) {
        used_ += cost;
        if (used_ > max_nodes_)
            throw BudgetExhausted("search budget exhausted after " + std::to_string(used_) +
                                  " nodes");
    }

    std::uint64_t used() const { return used_; }
    std::uint64_t max_nodes() const { return max_nodes_; }

  private:
    std::uint64_t max_nodes_;
    std::uint64_t used_ = 0;
};

}  // namespace hm
