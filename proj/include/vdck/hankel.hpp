#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vdck/laurent.hpp"
#include "vdck/matrix.hpp"

namespace vdck {

// rows x cols block of the Hankel matrix of theta: entry (i, l) = a_{i+l}
// for 1-based row i and 0-based column l, with a_k = 0 below the start of
// the fractional part. Entries beyond the horizon raise HorizonError.
FpMatrix hankel_submatrix(const LaurentSeries& theta, size_t rows, size_t cols);

// { m <= m_max : the upper-left m x m Hankel block is regular }. These are
// exactly the convergent denominator degrees d_h of <theta>.
std::set<size_t> regular_sizes(const LaurentSeries& theta, size_t m_max);

struct DeficiencyWitness {
    unsigned r;
    size_t h;   // 1-based quotient index within the expansion of <X^r theta>
    int deg;
};

// Scan result over the shifted expansions <X^r theta>, r <= r_max.
// D_hat is a certified value of (max quotient degree) - 1 over the scanned
// range; it lower-bounds the true deficiency and the scan cannot speak about
// unscanned r. The witnesses list where the maximum degree occurred.
struct DeficiencyReport {
    int d_hat = 0;
    int max_certified_degree = 0;
    unsigned scanned_r = 0;
    int horizon = 0;
    uint64_t quotients_checked = 0;
    std::vector<DeficiencyWitness> witnesses;
    // Set when some shifted expansion terminates exactly (rational theta);
    // the scan stops there and the result is diagnostic, not a deficiency.
    std::optional<unsigned> rational_collapse_r;

    std::string to_text() const; // "key: value" lines
};

DeficiencyReport deficiency_scan(const LaurentSeries& theta, unsigned r_max,
                                 size_t max_quotients, unsigned threads = 1);

// Exhaustive minimum of deg(Q) + deg(<X^r Q theta>) over 0 <= r <= r_max and
// nonzero Q with deg Q <= deg_q_max; this is the base-2 exponent of
// |Q| * ||X^r Q theta||. Only monic Q are enumerated since scalar factors do
// not change the product. Exact annihilation (rational theta) yields the
// -infinity sentinel.
struct BruteInfResult {
    Degree exponent;
    unsigned r = 0;
    std::optional<Poly> witness_q; // empty only when nothing was scanned
};

BruteInfResult brute_inf(const LaurentSeries& theta, unsigned r_max, int deg_q_max,
                         unsigned threads = 1);

} // namespace vdck
