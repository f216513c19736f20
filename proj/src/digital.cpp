#include "vdck/digital.hpp"

#include <algorithm>

#include "vdck/errors.hpp"

namespace vdck {

FpMatrix GeneratorMatrix::materialize(const Fp& fp, size_t rows, size_t cols) const {
    FpMatrix out(fp, rows, cols);
    if (std::holds_alternative<UnitI>(kind_)) {
        for (size_t i = 0; i < std::min(rows, cols); ++i) out.at(i, i) = 1;
    } else if (std::holds_alternative<AntiDiagJ>(kind_)) {
        for (size_t i = 0; i < std::min(rows, cols); ++i) out.at(i, cols - 1 - i) = 1;
    } else if (const LaurentSeries* s = std::get_if<LaurentSeries>(&kind_)) {
        if (s->field() != fp) throw ConfigError("generator matrix over a different field");
        for (size_t i = 1; i <= rows; ++i)
            for (size_t l = 0; l < cols; ++l) out.at(i - 1, l) = s->coeff(int(i + l));
    } else {
        const FpMatrix& e = std::get<FpMatrix>(kind_);
        if (e.field() != fp) throw ConfigError("generator matrix over a different field");
        for (size_t i = 0; i < std::min(rows, e.rows()); ++i)
            for (size_t j = 0; j < std::min(cols, e.cols()); ++j) out.at(i, j) = e.at(i, j);
    }
    return out;
}

std::string GeneratorMatrix::kind_name() const {
    if (is_unit_i()) return "I";
    if (is_anti_diag_j()) return "J";
    if (hankel_series()) return "H";
    return "explicit";
}

NetSpec::NetSpec(const Fp& f, unsigned m_, std::vector<GeneratorMatrix> mats, unsigned depth)
    : fp(f), m(m_), matrices(std::move(mats)), digit_depth(depth) {
    if (matrices.size() < 2 || matrices.size() > 3)
        throw ConfigError("net spec: dimension must be 2 or 3");
    if (m == 0) throw ConfigError("net spec: m must be >= 1");
    if (digit_depth < m) throw ConfigError("net spec: digit depth must be >= m");
    for (const auto& g : matrices)
        if (const LaurentSeries* s = g.hankel_series())
            if (s->field() != fp) throw ConfigError("net spec: mixed moduli");
}

BigRational DigitalCoord::truncate(unsigned r, uint32_t p) const {
    BigInt num = 0;
    for (unsigned j = 1; j <= r; ++j) {
        num *= p;
        num += j <= digits.size() ? digits[j - 1] : 0;
    }
    return BigRational(num, bigint_pow(p, r));
}

std::vector<uint32_t> base_p_digits(BigInt n, uint32_t p, size_t count) {
    std::vector<uint32_t> d(count, 0);
    for (size_t i = 0; i < count && n != 0; ++i) {
        d[i] = uint32_t(n % p);
        n /= p;
    }
    if (n != 0) throw ConfigError("index does not fit in the requested digit count");
    return d;
}

BigRational radical_inverse(uint32_t base, uint64_t n) {
    if (base < 2) throw ConfigError("radical inverse base must be >= 2");
    BigInt num = 0, den = 1;
    while (n != 0) {
        num = num * base + BigInt(n % base);
        den *= base;
        n /= base;
    }
    return BigRational(num, den);
}

namespace {

std::vector<uint32_t> coordinate_digits(const GeneratorMatrix& g, const Fp& fp,
                                        const std::vector<uint32_t>& nvec, unsigned depth) {
    const size_t m = nvec.size();
    std::vector<uint32_t> y(depth, 0);
    if (g.is_unit_i()) {
        for (size_t j = 0; j < std::min<size_t>(depth, m); ++j) y[j] = nvec[j];
    } else if (g.is_anti_diag_j()) {
        for (size_t j = 1; j <= std::min<size_t>(depth, m); ++j) y[j - 1] = nvec[m - j];
    } else if (const LaurentSeries* s = g.hankel_series()) {
        const uint32_t p = fp.modulus();
        for (size_t j = 1; j <= depth; ++j) {
            uint64_t acc = 0;
            for (size_t l = 0; l < m; ++l)
                if (nvec[l]) acc += uint64_t(s->coeff(int(j + l))) * nvec[l];
            y[j - 1] = uint32_t(acc % p);
        }
    } else {
        y = g.materialize(fp, depth, m).apply(nvec);
    }
    return y;
}

DigitalCoord make_coord(std::vector<uint32_t> digits, uint32_t p) {
    DigitalCoord c;
    BigInt num = 0;
    for (uint32_t d : digits) {
        num *= p;
        num += d;
    }
    c.value = BigRational(num, bigint_pow(p, digits.size()));
    c.digits = std::move(digits);
    return c;
}

} // namespace

DigitalPoint digital_point_from_digits(const NetSpec& spec, const std::vector<uint32_t>& nvec) {
    if (nvec.size() != spec.m) throw ConfigError("digit vector length must equal m");
    DigitalPoint pt;
    BigInt n = 0;
    for (size_t i = nvec.size(); i-- > 0;) {
        n *= spec.fp.modulus();
        n += nvec[i];
    }
    pt.n = n;
    for (const auto& g : spec.matrices)
        pt.coords.push_back(
            make_coord(coordinate_digits(g, spec.fp, nvec, spec.digit_depth), spec.fp.modulus()));
    return pt;
}

DigitalPoint digital_point(const NetSpec& spec, const BigInt& n) {
    if (n < 0 || n >= spec.point_count())
        throw ConfigError("point index out of range [0, p^m)");
    return digital_point_from_digits(spec, base_p_digits(n, spec.fp.modulus(), spec.m));
}

std::vector<uint32_t> kronecker_digits(const LaurentSeries& theta, uint64_t n, unsigned depth) {
    const Fp& fp = theta.field();
    const uint32_t p = fp.modulus();
    std::vector<uint32_t> ncoeffs;
    for (uint64_t v = n; v != 0; v /= p) ncoeffs.push_back(uint32_t(v % p));
    Poly npoly(fp, std::move(ncoeffs));
    LaurentSeries prod = frac(mul_poly_shift(theta, npoly, 0));
    if (prod.horizon() < int(depth))
        throw HorizonError("kronecker_coord: requested depth exceeds certified horizon");
    std::vector<uint32_t> digits(depth, 0);
    if (!prod.is_zero_to_horizon())
        for (unsigned j = 1; j <= depth; ++j) digits[j - 1] = prod.coeff(int(j));
    return digits;
}

BigRational kronecker_coord(const LaurentSeries& theta, uint64_t n, unsigned depth) {
    std::vector<uint32_t> digits = kronecker_digits(theta, n, depth);
    const uint32_t p = theta.field().modulus();
    BigInt num = 0;
    for (uint32_t d : digits) {
        num *= p;
        num += d;
    }
    return BigRational(num, bigint_pow(p, depth));
}

namespace {

// Stacks the upper d_i rows of each materialized matrix and tests full row rank.
bool composition_full_rank(const std::vector<FpMatrix>& mats, const Fp& fp,
                           const std::vector<unsigned>& d, unsigned m) {
    size_t total = 0;
    for (unsigned di : d) total += di;
    if (total == 0) return true;
    FpMatrix stacked(fp, total, m);
    size_t row = 0;
    for (size_t i = 0; i < mats.size(); ++i)
        for (unsigned r = 0; r < d[i]; ++r, ++row)
            for (unsigned c = 0; c < m; ++c) stacked.at(row, c) = mats[i].at(r, c);
    return mat_rank(std::move(stacked)) == total;
}

template <typename Visit>
void for_each_composition(unsigned total, size_t parts, Visit&& visit) {
    std::vector<unsigned> d(parts, 0);
    if (parts == 2) {
        for (unsigned d1 = 0; d1 <= total; ++d1) {
            d[0] = d1;
            d[1] = total - d1;
            if (!visit(d)) return;
        }
    } else {
        for (unsigned d1 = 0; d1 <= total; ++d1)
            for (unsigned d2 = 0; d1 + d2 <= total; ++d2) {
                d[0] = d1;
                d[1] = d2;
                d[2] = total - d1 - d2;
                if (!visit(d)) return;
            }
    }
}

} // namespace

TValueResult net_t_value(const NetSpec& spec) {
    const unsigned m = spec.m;
    std::vector<FpMatrix> mats;
    for (const auto& g : spec.matrices) mats.push_back(g.materialize(spec.fp, m, m));

    TValueResult res;
    for (unsigned t = 0; t <= m; ++t) {
        bool all_ok = true;
        std::vector<unsigned> failing;
        for_each_composition(m - t, spec.s(), [&](const std::vector<unsigned>& d) {
            if (!composition_full_rank(mats, spec.fp, d, m)) {
                all_ok = false;
                failing = d;
                return false;
            }
            return true;
        });
        if (all_ok) {
            res.t = t;
            return res;
        }
        res.blocking_composition = failing;
    }
    res.t = m; // unreachable: t = m always passes (empty condition)
    return res;
}

std::vector<SequenceTCheck> sequence_t_check(const GeneratorMatrix& c1,
                                             const GeneratorMatrix& c2, const Fp& fp,
                                             const std::vector<unsigned>& m_range, unsigned t) {
    std::vector<SequenceTCheck> out;
    for (unsigned m : m_range) {
        SequenceTCheck chk{m, true, std::nullopt};
        if (m > t) {
            std::vector<FpMatrix> mats{c1.materialize(fp, m, m), c2.materialize(fp, m, m)};
            for (unsigned d1 = 0; d1 <= m - t && chk.ok; ++d1) {
                unsigned d2 = m - t - d1;
                if (!composition_full_rank(mats, fp, {d1, d2}, m)) {
                    chk.ok = false;
                    chk.failing = {d1, d2};
                }
            }
        }
        out.push_back(chk);
    }
    return out;
}

std::optional<unsigned> pnorm_exponent(const DigitalPoint& x) {
    if (x.coords.size() != 3) throw ConfigError("pnorm is defined for 3-dimensional points");
    unsigned l = 0;
    for (const auto& c : x.coords) {
        size_t j = 0;
        while (j < c.digits.size() && c.digits[j] == 0) ++j;
        if (j == c.digits.size()) return std::nullopt; // min of empty set = infinity
        l += unsigned(j) + 1;
    }
    return l;
}

namespace {

// First nonzero digit index (1-based) of the digit-wise difference a - b,
// or 0 when the difference vanishes through the stored depth.
unsigned first_diff_index(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    for (size_t j = 0; j < a.size(); ++j)
        if (a[j] != b[j]) return unsigned(j) + 1;
    return 0;
}

} // namespace

AdmissibilityResult admissibility_check(const NetSpec& spec, unsigned d,
                                        AdmissibilityMode mode) {
    if (spec.s() != 3) throw ConfigError("admissibility is defined for 3-dimensional nets");
    BigInt total = spec.point_count();
    const BigInt budget = mode == AdmissibilityMode::Exhaustive ? BigInt(59049) : BigInt(1 << 24);
    if (total > budget) throw BudgetError("admissibility: p^m exceeds the scan budget");
    const uint64_t count = uint64_t(total);
    const unsigned threshold = spec.m + d; // admissible iff every l < threshold

    AdmissibilityResult res;
    res.admissible = true;

    auto fail = [&](uint64_t k, uint64_t n, std::optional<unsigned> l) {
        res.admissible = false;
        res.witness = {k, n};
        res.witness_l = l;
    };

    if (mode == AdmissibilityMode::ZeroShortcut) {
        for (uint64_t n = 1; n < count; ++n) {
            DigitalPoint pt = digital_point(spec, BigInt(n));
            std::optional<unsigned> l = pnorm_exponent(pt);
            if (!l || *l >= threshold) {
                fail(0, n, l);
                return res;
            }
        }
        return res;
    }

    // exhaustive pairwise scan
    std::vector<DigitalPoint> pts;
    pts.reserve(count);
    for (uint64_t n = 0; n < count; ++n) pts.push_back(digital_point(spec, BigInt(n)));
    for (uint64_t k = 0; k < count; ++k) {
        for (uint64_t n = k + 1; n < count; ++n) {
            unsigned l = 0;
            bool infinite = false;
            for (size_t i = 0; i < 3; ++i) {
                unsigned j = first_diff_index(pts[k].coords[i].digits, pts[n].coords[i].digits);
                if (j == 0) {
                    infinite = true;
                    break;
                }
                l += j;
            }
            if (infinite || l >= threshold) {
                fail(k, n, infinite ? std::nullopt : std::optional<unsigned>(l));
                return res;
            }
        }
    }
    return res;
}

} // namespace vdck
