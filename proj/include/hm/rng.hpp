#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hm {

// Seeded generator used by every randomized routine.  mt19937_64 is specified
// bit-for-bit by the standard; the bounded draws below avoid
// std::uniform_int_distribution, whose output is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    // uniform in [0, n), rejection sampled
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        std::uint64_t r;
        do {
            r = gen_();
        } while (r >= limit);
        return r % n;
    }

    bool bernoulli(double p) {
        double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return u < p;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace hm
