#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vdck/poly.hpp"

namespace vdck {

// Exact rational tail of a series: the series equals num/den everywhere,
// not just up to the horizon. Stored in canonical form (monic denominator,
// gcd(num, den) = 1).
struct RationalForm {
    Poly num;
    Poly den;
};

// Truncated formal Laurent series  sum_{i >= start} a_i X^{-i}  over F_p.
//
// Coefficients are known exactly for start <= i <= horizon and unknown
// beyond; operations compute the tightest horizon of their result and never
// fabricate unknown coefficients. A series built from a rational function
// additionally carries its exact tail, which downstream code may use to
// certify statements about coefficients beyond the horizon (termination of
// the continued fraction, exact vanishing).
//
// start <= 0 encodes a polynomial part (the i = 0 term is the constant,
// i = -1 the X coefficient, ...). A series that vanishes up to its horizon
// stores no coefficients; whether it is exactly zero is known only when the
// exact tail is present.
class LaurentSeries {
public:
    // Normalizes: strips leading zero coefficients and tightens `start`.
    LaurentSeries(const Fp& fp, int start, std::vector<uint32_t> coeffs, int horizon);

    static LaurentSeries zero(const Fp& fp, int horizon);

    const Fp& field() const { return fp_; }
    int start() const { return start_; }
    int horizon() const { return horizon_; }

    // True when no nonzero coefficient is known. Exactly-zero only if exact().
    bool is_zero_to_horizon() const { return a_.empty(); }
    bool is_exact_zero() const { return a_.empty() && exact_.has_value(); }

    // a_i, zero below start; HorizonError above the horizon unless the tail
    // is exact (then every coefficient is computable).
    uint32_t coeff(int i) const;

    // deg = -start for a nonzero series; -inf for an exact zero. A series
    // that merely vanishes to its horizon has no certified degree.
    Degree degree() const;

    const std::optional<RationalForm>& exact() const { return exact_; }
    void set_exact(RationalForm rf) { exact_ = std::move(rf); }
    void drop_exact() { exact_.reset(); }

    std::vector<uint32_t> coeff_range(int first, int last) const;

private:
    Fp fp_;
    int start_;   // meaningful only when !a_.empty()
    int horizon_;
    std::vector<uint32_t> a_; // a_[i] = coefficient of X^{-(start_+i)}
    std::optional<RationalForm> exact_;
};

// Expansion of num/den to the given horizon (exact; the result carries its
// rational tail). Throws on den = 0.
LaurentSeries from_rational(const Poly& num, const Poly& den, int horizon);

// theta = sum_{i>=1} f_i X^{-i} over F_3 where f is the paperfolding
// sequence: f_n = 0 if k = 1 (mod 4) and 1 if k = 3 (mod 4), for the odd k
// with n = 2^v * k.
uint32_t paperfolding_digit(uint64_t n);
LaurentSeries paperfolding_theta(int horizon);

// Fractional part: drops all terms with index i <= 0.
LaurentSeries frac(const LaurentSeries& s);

// X^r * q * s, truncated; the result's horizon is horizon(s) - r - deg q.
LaurentSeries mul_poly_shift(const LaurentSeries& s, const Poly& q, unsigned r);

// frac(X^r * s); convenience used by the shifted-expansion scans.
LaurentSeries shift_frac(const LaurentSeries& s, unsigned r);

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries series_sub(const LaurentSeries& a, const LaurentSeries& b);

// Copy with a smaller horizon and the exact tail dropped; simulates a series
// about which strictly less is known.
LaurentSeries truncated(const LaurentSeries& s, int new_horizon);

// Re-expands a series with an exact tail to a larger horizon.
LaurentSeries extend(const LaurentSeries& s, int new_horizon);

struct CFQuotient {
    Poly a;
    // Degree of this quotient agrees with the untruncated series
    // (guaranteed when d_{h-1} + d_h <= horizon of the fractional part).
    bool certified = false;
    // The quotient's coefficients agree as well (2 d_h <= horizon). The
    // degree rule alone pins down deg(A_h) but not the lower coefficients.
    bool value_certified = false;
};

struct CFExpansion {
    explicit CFExpansion(const Fp& fp) : a0(Poly::zero(fp)) {}

    Poly a0;
    std::vector<CFQuotient> quotients;
    std::vector<int> degrees; // d_h = sum of deg(A_i), i <= h; parallel to quotients
    bool terminated = false;  // exact termination; requires a rational tail
    int horizon = 0;          // horizon of the fractional part the CF was run on

    size_t certified_count() const {
        size_t n = 0;
        while (n < quotients.size() && quotients[n].certified) ++n;
        return n;
    }
};

// Continued fraction of a truncated series. With an exact rational tail the
// Euclidean algorithm runs on the rational form and every emitted quotient is
// certified; otherwise quotients are emitted while the degree-certification
// rule holds, plus one final uncertified quotient for diagnostics.
CFExpansion continued_fraction(const LaurentSeries& s, size_t max_quotients);

// Exact continued fraction of num/den via the Euclidean algorithm.
CFExpansion cf_rational(const Poly& num, const Poly& den, size_t max_quotients);

struct Convergent {
    Poly p;
    Poly q;
    int d; // = deg q = cumulative quotient degree
};

// Convergents of the certified prefix via the three-term recurrence.
std::vector<Convergent> convergents(const CFExpansion& cf);

// Text form "p start a_start ... a_horizon" (space-separated decimals).
std::string format_series(const LaurentSeries& s);
LaurentSeries parse_series(const std::string& text);

} // namespace vdck
