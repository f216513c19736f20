#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vdck/digital.hpp"

namespace vdck {

// Digit vectors of the box J = [0, g1) x [0, g2) x [0, g3) built from
// repeated blocks (0,...,0,1) of length v:
//   g1 = m/(4v) blocks,                         r1 = m/4
//   g2 = v-u zeros then m/(4v)-1 blocks,        r2 = m/4 - u
//   g3 = m/4+u zeros, a middle section of       r3 = 3m/4
//        length m/4-u (filled once the unique
//        matching index is solved), then
//        m/(4v) blocks.
struct GammaSpec {
    unsigned m = 0;
    unsigned v = 0;
    unsigned u = 0;
    std::array<std::vector<uint32_t>, 3> gamma;
    bool middle_filled = false;

    size_t r(size_t i) const { return gamma[i].size(); }
    // gamma value sum_j gamma_j p^{-j} for coordinate i
    BigRational value(size_t i, uint32_t p) const;
};

GammaSpec build_gamma(unsigned m, unsigned v, unsigned u);

// Anchored p-adic box given per coordinate by a digit prefix: a point lies
// inside iff the first prefix[i].size() digits of coordinate i match.
// (j, k) keep the decomposition labels when the interval stems from a box
// decomposition; they are not needed for counting.
struct ElementaryInterval {
    std::array<std::vector<uint32_t>, 3> prefix;
    std::array<unsigned, 3> j{0, 0, 0};
    std::array<uint32_t, 3> k{0, 0, 0};

    unsigned order() const {
        return unsigned(prefix[0].size() + prefix[1].size() + prefix[2].size());
    }
};

// Disjoint decomposition of prod_i [0, gamma_i) into elementary intervals
// I(j1,k1,j2,k2,j3,k3); intervals exist only where gamma digits are nonzero.
std::vector<ElementaryInterval> decompose_box(const std::array<std::vector<uint32_t>, 3>& gamma);
std::vector<ElementaryInterval> enumerate_intervals(const GammaSpec& g);

// Smallest u in [D, 2D) such that the (m/4-u) x (m/4-u) Hankel block of
// <X^{m/2} theta> is regular. Failure to find one falsifies that theta has
// deficiency <= D over this range and is reported as such. D = 0 is
// rejected: the constraint D <= u < 2D is empty there.
unsigned choose_u(const LaurentSeries& theta, unsigned m, unsigned D);

struct NbarSolution {
    std::vector<uint32_t> digits; // base-p digits of the unique index, LSD first
    GammaSpec filled;             // gamma with the middle section filled
};

// Solves for the unique n with [x_n^{(i)}]_{r_i} = gamma^{(i)}. Requires
// C1 = I and C3 = J (they pin the fixed digits); the remaining digits come
// from an affine system in the rows of C2. Inconsistency or non-uniqueness
// is a falsification event. The solution is verified by regenerating the
// point and re-checking all three truncations.
NbarSolution solve_nbar(const NetSpec& spec, const GammaSpec& g);

// Exact number of net points inside the interval: membership is an affine
// condition on the digit vector of n (the first j_i rows of each C_i must
// reproduce the prefix digits), so the count is 0 or p^{m - rank}. No point
// enumeration is involved.
BigInt count_in_interval(const NetSpec& spec, const ElementaryInterval& iv);

struct DeficitRow {
    std::array<unsigned, 3> j;
    std::array<uint32_t, 3> k;
    unsigned order;
    BigInt count;
    BigRational contribution; // count - p^m * volume
};

struct DeficitReport {
    unsigned m = 0, v = 0, u = 0;
    BigRational deficit;  // sum of contributions, exact
    BigRational lambda_j; // volume of J
    std::map<unsigned, uint64_t> empty_interval_orders;
    uint64_t triples_at_min_order = 0;    // certified (m/(8v))^2 subfamily
    uint64_t min_order_triples_enumerated = 0; // all (j1,j2,j3) at order m+v-u
    size_t interval_count = 0;
    std::vector<DeficitRow> rows;

    std::string to_text() const;
    std::string rows_csv() const;
};

// Exact signed deficit #points-in-J - p^m * lambda(J) over the decomposition.
// When check_deficiency is set (the structural pipeline), the per-interval
// counts are verified against the dichotomy the construction predicts:
// orders <= m - D count exactly p^{m-order}, well-defined orders > m - D lie
// at >= m+v-u with j3 > m/2 and count zero. Violations throw
// FalsificationError.
DeficitReport deficit(const NetSpec& spec, const GammaSpec& g,
                      std::optional<unsigned> check_deficiency, unsigned threads = 1);

} // namespace vdck
