#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "vdck/errors.hpp"

namespace vdck {

// Arithmetic context for the prime field F_p. The modulus is a runtime
// parameter, 2 <= p < 2^16, so element products fit in uint32_t and dot
// products can accumulate in uint64_t without overflow for any practical
// vector length.
class Fp {
public:
    explicit Fp(uint32_t p) : p_(p) {
        if (!is_prime(p))
            throw ConfigError("modulus " + std::to_string(p) + " is not a prime in [2, 2^16)");
    }

    uint32_t modulus() const { return p_; }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p_);
    }
    uint32_t reduce(int64_t v) const {
        int64_t r = v % static_cast<int64_t>(p_);
        return static_cast<uint32_t>(r < 0 ? r + p_ : r);
    }
    uint32_t reduce64(uint64_t v) const { return static_cast<uint32_t>(v % p_); }

    uint32_t pow(uint32_t a, uint64_t e) const {
        uint64_t base = a % p_, acc = 1;
        while (e) {
            if (e & 1) acc = (acc * base) % p_;
            base = (base * base) % p_;
            e >>= 1;
        }
        return static_cast<uint32_t>(acc);
    }

    uint32_t inv(uint32_t a) const {
        if (a % p_ == 0) throw ConfigError("division by zero in F_p");
        return pow(a % p_, p_ - 2);
    }

    bool operator==(const Fp& o) const { return p_ == o.p_; }
    bool operator!=(const Fp& o) const { return p_ != o.p_; }

    static bool is_prime(uint32_t n) {
        if (n < 2 || n >= (1u << 16)) return false;
        for (uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    uint32_t p_;
};

// Degree valuation with deg(0) = -infinity kept as a tagged state, so the
// valuation is total and comparisons never run through a magic integer.
class Degree {
public:
    constexpr Degree() : finite_(false), v_(0) {}
    constexpr explicit Degree(int v) : finite_(true), v_(v) {}

    static constexpr Degree neg_inf() { return Degree(); }

    constexpr bool is_neg_inf() const { return !finite_; }
    constexpr bool finite() const { return finite_; }

    int value() const {
        if (!finite_) throw ConfigError("degree of zero has no finite value");
        return v_;
    }

    Degree operator+(const Degree& o) const {
        if (!finite_ || !o.finite_) return neg_inf();
        return Degree(v_ + o.v_);
    }
    Degree operator+(int k) const { return finite_ ? Degree(v_ + k) : neg_inf(); }
    Degree operator-(int k) const { return finite_ ? Degree(v_ - k) : neg_inf(); }

    friend bool operator==(const Degree& a, const Degree& b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.v_ == b.v_);
    }
    friend bool operator!=(const Degree& a, const Degree& b) { return !(a == b); }
    friend bool operator<(const Degree& a, const Degree& b) {
        if (!a.finite_) return b.finite_;
        if (!b.finite_) return false;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Degree& a, const Degree& b) { return a < b || a == b; }
    friend bool operator>(const Degree& a, const Degree& b) { return b < a; }
    friend bool operator>=(const Degree& a, const Degree& b) { return b <= a; }

    friend bool operator==(const Degree& a, int v) { return a.finite_ && a.v_ == v; }
    friend bool operator>=(const Degree& a, int v) { return a.finite_ && a.v_ >= v; }
    friend bool operator<(const Degree& a, int v) { return !a.finite_ || a.v_ < v; }

    std::string str() const { return finite_ ? std::to_string(v_) : "-inf"; }

private:
    bool finite_;
    int v_;
};

} // namespace vdck
