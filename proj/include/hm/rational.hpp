#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hm {

// Exact rational with 64-bit numerator/denominator.  Bounds checked via
// 128-bit intermediates; the quantities in this project are tiny.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }
    explicit Rational(long long n) : num(n), den(1) {}

    void normalize() {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double approx() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
};

}  // namespace hm
