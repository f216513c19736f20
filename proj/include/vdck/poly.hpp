#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vdck/fp.hpp"

namespace vdck {

// Dense polynomial over F_p, little-endian coefficients (c[i] multiplies X^i).
// Always normalized: the last stored coefficient is nonzero, and the zero
// polynomial stores no coefficients at all.
class Poly {
public:
    explicit Poly(const Fp& fp) : fp_(fp) {}
    Poly(const Fp& fp, std::vector<uint32_t> coeffs) : fp_(fp), c_(std::move(coeffs)) {
        for (auto& x : c_) x %= fp_.modulus();
        normalize();
    }

    static Poly zero(const Fp& fp) { return Poly(fp); }
    static Poly constant(const Fp& fp, uint32_t v) { return Poly(fp, {v}); }
    static Poly monomial(const Fp& fp, size_t deg, uint32_t lead = 1) {
        std::vector<uint32_t> c(deg + 1, 0);
        c[deg] = lead;
        return Poly(fp, std::move(c));
    }

    const Fp& field() const { return fp_; }
    uint32_t modulus() const { return fp_.modulus(); }

    bool is_zero() const { return c_.empty(); }
    Degree degree() const { return c_.empty() ? Degree::neg_inf() : Degree(int(c_.size()) - 1); }
    // Degree as an int for nonzero polynomials; callers must check is_zero().
    int deg() const { return degree().value(); }

    uint32_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<uint32_t>& coeffs() const { return c_; }

    bool is_monic() const { return lead() == 1; }
    Poly monic() const;       // divide by the leading coefficient
    Poly scaled(uint32_t s) const;

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.fp_ == b.fp_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    std::string str() const;                       // e.g. "X^3+2X+1"
    static Poly parse(const Fp& fp, const std::string& text);

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    Fp fp_;
    std::vector<uint32_t> c_;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_shift(const Poly& a, size_t k); // a * X^k

// Euclidean division: a = q*b + r with deg r < deg b. Throws on b = 0.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);

// Monic gcd (gcd(0,0) = 0).
Poly poly_gcd(const Poly& a, const Poly& b);

} // namespace vdck
