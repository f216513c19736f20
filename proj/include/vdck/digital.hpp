#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vdck/bigint.hpp"
#include "vdck/laurent.hpp"
#include "vdck/matrix.hpp"

namespace vdck {

// Generator matrix of a digital construction, materialized on demand.
//   UnitI:     row i has a single 1 in column i-1.
//   HankelOf:  row i, column l holds a_{i+l} of the series.
//   AntiDiagJ: 1s on the antidiagonal of the top m x m block, zeros below;
//              maps digit vectors to their reversal, so x_n = n / p^m.
//   Explicit:  a fixed matrix, zero-padded outside its stored block.
class GeneratorMatrix {
public:
    struct UnitI {};
    struct AntiDiagJ {};

    static GeneratorMatrix unit_i() { return GeneratorMatrix(UnitI{}); }
    static GeneratorMatrix anti_diag_j() { return GeneratorMatrix(AntiDiagJ{}); }
    static GeneratorMatrix hankel_of(LaurentSeries theta) {
        return GeneratorMatrix(std::move(theta));
    }
    static GeneratorMatrix explicit_matrix(FpMatrix m) { return GeneratorMatrix(std::move(m)); }

    // rows x cols block; AntiDiagJ reverses within the top cols x cols block.
    FpMatrix materialize(const Fp& fp, size_t rows, size_t cols) const;

    bool is_unit_i() const { return std::holds_alternative<UnitI>(kind_); }
    bool is_anti_diag_j() const { return std::holds_alternative<AntiDiagJ>(kind_); }
    const LaurentSeries* hankel_series() const { return std::get_if<LaurentSeries>(&kind_); }

    std::string kind_name() const;

private:
    explicit GeneratorMatrix(UnitI k) : kind_(k) {}
    explicit GeneratorMatrix(AntiDiagJ k) : kind_(k) {}
    explicit GeneratorMatrix(LaurentSeries s) : kind_(std::move(s)) {}
    explicit GeneratorMatrix(FpMatrix m) : kind_(std::move(m)) {}

    std::variant<UnitI, AntiDiagJ, LaurentSeries, FpMatrix> kind_;
};

// Digital net/sequence specification: s = matrices.size() in {2, 3};
// points are indexed by n < p^m and carry digit_depth digits per coordinate.
struct NetSpec {
    Fp fp;
    unsigned m;
    std::vector<GeneratorMatrix> matrices;
    unsigned digit_depth; // R >= m

    NetSpec(const Fp& f, unsigned m_, std::vector<GeneratorMatrix> mats, unsigned depth);

    size_t s() const { return matrices.size(); }
    BigInt point_count() const { return bigint_pow(fp.modulus(), m); }
};

// One coordinate of a digital point: digits y_1..y_R plus the exact value
// sum y_j p^{-j} as a rational with denominator p^R.
struct DigitalCoord {
    std::vector<uint32_t> digits;
    BigRational value;

    // [x]_r = sum_{j<=r} x_j p^{-j}
    BigRational truncate(unsigned r, uint32_t p) const;
};

struct DigitalPoint {
    BigInt n = 0;
    std::vector<DigitalCoord> coords;
};

std::vector<uint32_t> base_p_digits(BigInt n, uint32_t p, size_t count);

// b-adic radical inverse: digit reversal of n mapped into [0,1), exact.
BigRational radical_inverse(uint32_t base, uint64_t n);

// Point x_n of the net: each coordinate from C_i * vec(n) mod p, where
// vec(n) holds the base-p digits of n, least significant first.
DigitalPoint digital_point(const NetSpec& spec, const BigInt& n);
DigitalPoint digital_point_from_digits(const NetSpec& spec, const std::vector<uint32_t>& nvec);

// <theta * n(X)> evaluated at X = p to depth digits; the direct series route
// (no generator matrix involved). Requires horizon >= depth + digits of n.
BigRational kronecker_coord(const LaurentSeries& theta, uint64_t n, unsigned depth);
std::vector<uint32_t> kronecker_digits(const LaurentSeries& theta, uint64_t n, unsigned depth);

// Minimal t such that for all compositions d_1+...+d_s <= m - t the stacked
// upper rows of the generator matrices have full row rank. Only maximal
// compositions d_1+...+d_s = m - t are checked; removing rows cannot destroy
// full row rank.
struct TValueResult {
    unsigned t = 0;
    // the composition that fails at t-1 (absent when t = 0)
    std::optional<std::vector<unsigned>> blocking_composition;
};

TValueResult net_t_value(const NetSpec& spec);

// Sequence-level rank condition: for each m in m_range, checks every
// d_1 + d_2 = m - t against the left-upper submatrices of C1 and C2.
struct SequenceTCheck {
    unsigned m;
    bool ok;
    std::optional<std::pair<unsigned, unsigned>> failing; // (d1, d2)
};

std::vector<SequenceTCheck> sequence_t_check(const GeneratorMatrix& c1,
                                             const GeneratorMatrix& c2, const Fp& fp,
                                             const std::vector<unsigned>& m_range, unsigned t);

// l = sum_i min{ j : digit j of coordinate i is nonzero }, or the infinity
// sentinel (empty optional) when some coordinate has no nonzero digit within
// the stored depth. The p-norm of the point is p^{-l}.
std::optional<unsigned> pnorm_exponent(const DigitalPoint& x);

enum class AdmissibilityMode { Exhaustive, ZeroShortcut };

struct AdmissibilityResult {
    bool admissible = false;
    // witness of a violation: the offending n (zero-shortcut) or pair (k, n)
    std::optional<std::pair<uint64_t, uint64_t>> witness;
    std::optional<unsigned> witness_l;
};

// d-admissibility: min over distinct points of ||x_k (-) x_n||_p > p^{-m-d},
// with (-) the digit-wise difference. The zero-shortcut mode scans only
// ||x_n||_p for n > 0, valid for digital point sets because digit-wise
// differences of points are again points of the net.
AdmissibilityResult admissibility_check(const NetSpec& spec, unsigned d,
                                        AdmissibilityMode mode);

} // namespace vdck
