#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vdck/bigint.hpp"
#include "vdck/laurent.hpp"

namespace vdck {

// Finite point set in [0,1)^s, s <= 3, with exact rational coordinates.
// Coordinates are normalized to a common denominator per axis.
class PointSet {
public:
    PointSet(unsigned s, const std::vector<std::vector<BigRational>>& points);

    unsigned dim() const { return s_; }
    size_t size() const { return nums_.size(); }

    const BigInt& axis_den(unsigned axis) const { return den_[axis]; }
    const BigInt& num(size_t point, unsigned axis) const { return nums_[point][axis]; }
    BigRational coord(size_t point, unsigned axis) const {
        return BigRational(nums_[point][axis], den_[axis]);
    }

    PointSet prefix(size_t count) const; // first `count` points

private:
    PointSet() = default;
    unsigned s_ = 0;
    std::vector<BigInt> den_;
    std::vector<std::array<BigInt, 3>> nums_;
};

// Star discrepancy result. The supremum over anchored boxes prod [0, b_i) is
// either attained at the witness box (attained = true, count evaluated with
// strict inequality) or approached in the limit b -> witness from above
// (attained = false, count evaluated with <=).
struct DiscResult {
    size_t n = 0;
    BigRational dstar;
    std::vector<BigRational> witness;
    bool attained = false;
};

// |count/N - vol| evaluated the way the witness flag prescribes.
BigRational local_star_discrepancy(const PointSet& ps, const std::vector<BigRational>& box,
                                   bool attained);

// Exact supremum via coordinate-grid sweeps: O(N log N), O(N^2), O(N^3) for
// s = 1, 2, 3.
DiscResult star_discrepancy_exact(const PointSet& ps);

// Independent O(N^{s+1}) oracle: re-counts every critical box from scratch.
// Only for cross-validation; N <= 128.
DiscResult star_discrepancy_naive(const PointSet& ps);

// Appends the coordinate n / p^m to each point (points must be in generation
// order and N = p^m).
PointSet extend_with_index(const PointSet& ps, uint32_t p, unsigned m);

// First p^k points of the two-dimensional sequence (phi_p(n), <theta n(X)>|_p)
// with the second coordinate truncated to `depth` digits.
PointSet sequence_point_set(const LaurentSeries& theta, unsigned k, unsigned depth);

struct GrowthRow {
    unsigned k = 0;
    uint64_t n = 0;
    BigRational dstar;
    BigRational n_dstar;
};

// Least-squares fits of N*D_N^* against log^2 N and against log N
// (floating point, for qualitative comparison only).
struct GrowthFit {
    double a_log2 = 0, b_log2 = 0, sse_log2 = 0;
    double a_log = 0, b_log = 0, sse_log = 0;
};

struct GrowthResult {
    std::vector<GrowthRow> rows;
    GrowthFit fit;

    std::string rows_csv() const;
    std::string fit_text() const;
};

GrowthFit fit_growth(const std::vector<GrowthRow>& rows);
GrowthResult growth_sweep(const LaurentSeries& theta, unsigned k_max, unsigned depth_margin);

} // namespace vdck
