#include "vdck/boxcount.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "vdck/errors.hpp"
#include "vdck/hankel.hpp"
#include "vdck/parallel.hpp"

namespace vdck {

BigRational GammaSpec::value(size_t i, uint32_t p) const {
    BigInt num = 0;
    for (uint32_t d : gamma[i]) {
        num *= p;
        num += d;
    }
    return BigRational(num, bigint_pow(p, gamma[i].size()));
}

GammaSpec build_gamma(unsigned m, unsigned v, unsigned u) {
    if (v == 0 || m % (8 * v) != 0)
        throw ConfigError("build_gamma: m must be a positive multiple of 8v");
    if (m / (4 * v) < 2) throw ConfigError("build_gamma: m/(4v) must be >= 2");
    if (u > v) throw ConfigError("build_gamma: u must be <= v");

    const unsigned blocks = m / (4 * v);
    auto jv_blocks = [&](std::vector<uint32_t>& g, unsigned count) {
        for (unsigned b = 0; b < count; ++b) {
            g.insert(g.end(), v - 1, 0);
            g.push_back(1);
        }
    };

    GammaSpec out;
    out.m = m;
    out.v = v;
    out.u = u;
    jv_blocks(out.gamma[0], blocks);                       // r1 = m/4
    out.gamma[1].assign(v - u, 0);                         //
    jv_blocks(out.gamma[1], blocks - 1);                   // r2 = m/4 - u
    out.gamma[2].assign(m / 4 + u, 0);                     //
    out.gamma[2].insert(out.gamma[2].end(), m / 4 - u, 0); // middle, filled later
    jv_blocks(out.gamma[2], blocks);                       // r3 = 3m/4

    if (out.gamma[0].size() != m / 4 || out.gamma[1].size() != m / 4 - u ||
        out.gamma[2].size() != 3 * m / 4)
        throw ConfigError("build_gamma: internal length mismatch");
    return out;
}

std::vector<ElementaryInterval> decompose_box(
    const std::array<std::vector<uint32_t>, 3>& gamma) {
    // candidate (j, k, anchor prefix) lists per coordinate
    std::array<std::vector<ElementaryInterval>, 3> parts;
    for (size_t i = 0; i < 3; ++i) {
        for (size_t jj = 1; jj <= gamma[i].size(); ++jj) {
            uint32_t digit = gamma[i][jj - 1];
            for (uint32_t kk = 1; kk <= digit; ++kk) {
                ElementaryInterval part;
                part.prefix[i].assign(gamma[i].begin(), gamma[i].begin() + long(jj) - 1);
                part.prefix[i].push_back(kk - 1);
                part.j[i] = unsigned(jj);
                part.k[i] = kk;
                parts[i].push_back(std::move(part));
            }
        }
    }
    std::vector<ElementaryInterval> out;
    out.reserve(parts[0].size() * parts[1].size() * parts[2].size());
    for (const auto& p0 : parts[0])
        for (const auto& p1 : parts[1])
            for (const auto& p2 : parts[2]) {
                ElementaryInterval iv;
                iv.prefix = {p0.prefix[0], p1.prefix[1], p2.prefix[2]};
                iv.j = {p0.j[0], p1.j[1], p2.j[2]};
                iv.k = {p0.k[0], p1.k[1], p2.k[2]};
                out.push_back(std::move(iv));
            }
    return out;
}

std::vector<ElementaryInterval> enumerate_intervals(const GammaSpec& g) {
    return decompose_box(g.gamma);
}

unsigned choose_u(const LaurentSeries& theta, unsigned m, unsigned D) {
    if (D == 0)
        throw ConfigError(
            "choose_u: D = 0 leaves no admissible u (the range [D, 2D) is empty)");
    if (m % 4 != 0) throw ConfigError("choose_u: m must be divisible by 4");
    LaurentSeries shifted = shift_frac(theta, m / 2);
    for (unsigned u = D; u < 2 * D; ++u) {
        if (m / 4 <= u) break;
        size_t k = m / 4 - u;
        if (mat_rank(hankel_submatrix(shifted, k, k)) == k) return u;
    }
    throw FalsificationError(
        "choose_u: no u in [D, 2D) gives a regular Hankel block of <X^{m/2} theta>; "
        "theta is not of deficiency " +
        std::to_string(D) + " over this range");
}

NbarSolution solve_nbar(const NetSpec& spec, const GammaSpec& g) {
    if (spec.s() != 3) throw ConfigError("solve_nbar: a 3-dimensional net is required");
    if (!spec.matrices[0].is_unit_i() || !spec.matrices[2].is_anti_diag_j())
        throw ConfigError("solve_nbar: requires C1 = I and C3 = J");
    if (spec.m != g.m) throw ConfigError("solve_nbar: m mismatch between net and gamma");
    const unsigned m = g.m, u = g.u;
    const unsigned r1 = m / 4, r2 = m / 4 - u, r3 = 3 * m / 4;
    if (g.r(0) != r1 || g.r(1) != r2 || g.r(2) != r3)
        throw ConfigError("solve_nbar: gamma lengths do not match m, u");
    if (spec.digit_depth < r3)
        throw ConfigError("solve_nbar: digit depth must cover r3 = 3m/4");

    // digit layout: [0, m/4) from gamma1; [m/4, m/2) from the trailing blocks
    // of gamma3 via the antidiagonal; [m/2, 3m/4-u) free; [3m/4-u, m) zero
    std::vector<int> digit(m, -1);
    for (unsigned l = 0; l < r1; ++l) digit[l] = int(g.gamma[0][l]);
    for (unsigned j = 1; j <= m / 4 + u; ++j) {
        if (g.gamma[2][j - 1] != 0)
            throw ConfigError("solve_nbar: gamma3 zero-prefix is not zero");
        digit[m - j] = 0;
    }
    for (unsigned j = m / 2 + 1; j <= r3; ++j) digit[m - j] = int(g.gamma[2][j - 1]);

    std::vector<size_t> free_cols;
    for (unsigned l = 0; l < m; ++l)
        if (digit[l] < 0) free_cols.push_back(l);
    if (free_cols.size() != size_t(m / 4 - u))
        throw ConfigError("solve_nbar: unexpected free digit count");

    // affine system from the first r2 rows of C2
    FpMatrix c2 = spec.matrices[1].materialize(spec.fp, r2, m);
    FpMatrix sys(spec.fp, r2, free_cols.size());
    std::vector<uint32_t> rhs(r2, 0);
    for (unsigned row = 0; row < r2; ++row) {
        uint64_t fixed_part = 0;
        for (unsigned l = 0; l < m; ++l)
            if (digit[l] >= 0) fixed_part += uint64_t(c2.at(row, l)) * uint64_t(digit[l]);
        rhs[row] = spec.fp.sub(g.gamma[1][row], spec.fp.reduce64(fixed_part));
        for (size_t t = 0; t < free_cols.size(); ++t) sys.at(row, t) = c2.at(row, free_cols[t]);
    }
    AffineSolution sol = solve_affine(sys, rhs);
    if (!sol.consistent)
        throw FalsificationError("solve_nbar: truncation system is inconsistent");
    if (sol.nullity != 0)
        throw FalsificationError("solve_nbar: truncation system is not unique (nullity " +
                                 std::to_string(sol.nullity) + ")");

    NbarSolution out;
    out.digits.assign(m, 0);
    for (unsigned l = 0; l < m; ++l) out.digits[l] = digit[l] >= 0 ? uint32_t(digit[l]) : 0;
    for (size_t t = 0; t < free_cols.size(); ++t) out.digits[free_cols[t]] = sol.particular[t];

    out.filled = g;
    for (unsigned j = m / 4 + u + 1; j <= m / 2; ++j)
        out.filled.gamma[2][j - 1] = out.digits[m - j];
    out.filled.middle_filled = true;

    // regeneration self-check: all three truncations must reproduce gamma
    DigitalPoint pt = digital_point_from_digits(spec, out.digits);
    for (size_t i = 0; i < 3; ++i) {
        const auto& want = out.filled.gamma[i];
        for (size_t jj = 0; jj < want.size(); ++jj)
            if (pt.coords[i].digits[jj] != want[jj])
                throw FalsificationError("solve_nbar: regeneration self-check failed at "
                                         "coordinate " +
                                         std::to_string(i + 1));
    }
    return out;
}

BigInt count_in_interval(const NetSpec& spec, const ElementaryInterval& iv) {
    const unsigned m = spec.m;
    if (iv.order() > 3 * m) throw ConfigError("count_in_interval: order exceeds 3m");
    size_t total_rows = 0;
    for (size_t i = 0; i < spec.s(); ++i) total_rows += iv.prefix[i].size();
    if (total_rows == 0) return spec.point_count();

    FpMatrix sys(spec.fp, total_rows, m);
    std::vector<uint32_t> rhs;
    rhs.reserve(total_rows);
    size_t row = 0;
    for (size_t i = 0; i < spec.s(); ++i) {
        if (iv.prefix[i].empty()) continue;
        FpMatrix block = spec.matrices[i].materialize(spec.fp, iv.prefix[i].size(), m);
        for (size_t r = 0; r < iv.prefix[i].size(); ++r, ++row) {
            for (unsigned c = 0; c < m; ++c) sys.at(row, c) = block.at(r, c);
            rhs.push_back(iv.prefix[i][r]);
        }
    }
    AffineSolution sol = solve_affine(sys, rhs);
    if (!sol.consistent) return 0;
    return bigint_pow(spec.fp.modulus(), sol.nullity);
}

std::string DeficitReport::to_text() const {
    std::ostringstream os;
    os << "m: " << m << "\n";
    os << "v: " << v << "\n";
    os << "u: " << u << "\n";
    os << "interval_count: " << interval_count << "\n";
    os << "lambda_j: " << rational_str(lambda_j) << "\n";
    os << "deficit: " << rational_str(deficit) << "\n";
    os << "triples_at_min_order: " << triples_at_min_order << "\n";
    os << "min_order_triples_enumerated: " << min_order_triples_enumerated << "\n";
    for (const auto& [order, cnt] : empty_interval_orders)
        os << "empty_intervals_at_order_" << order << ": " << cnt << "\n";
    return os.str();
}

std::string DeficitReport::rows_csv() const {
    std::ostringstream os;
    os << "j1,j2,j3,k1,k2,k3,order,count,contribution\n";
    for (const auto& r : rows) {
        os << r.j[0] << "," << r.j[1] << "," << r.j[2] << "," << r.k[0] << "," << r.k[1] << ","
           << r.k[2] << "," << r.order << "," << r.count.str() << ","
           << rational_str(r.contribution) << "\n";
    }
    return os.str();
}

DeficitReport deficit(const NetSpec& spec, const GammaSpec& g,
                      std::optional<unsigned> check_deficiency, unsigned threads) {
    const uint32_t p = spec.fp.modulus();
    const unsigned m = spec.m;
    std::vector<ElementaryInterval> ivs = enumerate_intervals(g);

    DeficitReport rep;
    rep.m = g.m;
    rep.v = g.v;
    rep.u = g.u;
    rep.interval_count = ivs.size();
    rep.lambda_j = g.value(0, p) * g.value(1, p) * g.value(2, p);

    std::vector<BigInt> counts(ivs.size());
    parallel_chunks(ivs.size(), threads, [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) counts[i] = count_in_interval(spec, ivs[i]);
    });

    const BigInt pm = spec.point_count();
    BigRational volume_sum = 0;
    rep.deficit = 0;
    rep.rows.reserve(ivs.size());
    for (size_t i = 0; i < ivs.size(); ++i) {
        const unsigned order = ivs[i].order();
        BigRational vol(BigInt(1), bigint_pow(p, order));
        volume_sum += vol;
        BigRational contribution = BigRational(counts[i]) - BigRational(pm) * vol;
        rep.deficit += contribution;
        if (counts[i] == 0) ++rep.empty_interval_orders[order];
        rep.rows.push_back({ivs[i].j, ivs[i].k, order, counts[i], contribution});
    }
    if (volume_sum != rep.lambda_j)
        throw FalsificationError("deficit: interval volumes do not sum to lambda(J)");

    if (check_deficiency) {
        const unsigned D = *check_deficiency;
        const unsigned v = g.v, u = g.u;
        const unsigned min_order = m + v - u;
        for (size_t i = 0; i < ivs.size(); ++i) {
            const unsigned order = ivs[i].order();
            if (order <= m - D) {
                if (counts[i] * bigint_pow(p, order) != pm)
                    throw FalsificationError(
                        "deficit: interval of order <= m - D does not count p^{m-order}");
            } else {
                if (order < min_order || ivs[i].j[2] <= m / 2)
                    throw FalsificationError(
                        "deficit: interval of order > m - D outside the predicted shape");
                if (counts[i] != 0)
                    throw FalsificationError(
                        "deficit: interval of order >= m+v-u is not empty (order " +
                        std::to_string(order) + ")");
            }
        }

        // distinct (j1,j2,j3) triples at the minimal order
        std::set<std::array<unsigned, 3>> seen;
        for (const auto& iv : ivs)
            if (iv.order() == min_order) seen.insert({iv.j[0], iv.j[1], iv.j[2]});
        rep.min_order_triples_enumerated = seen.size();

        // the certified subfamily: lambda1 in (q/2, q], lambda2 in [q/2, q),
        // each pair fixing the unique lambda3 with l1+l2+l3 = m/(2v)
        const unsigned q = m / (4 * v);
        uint64_t certified = 0;
        for (unsigned l1 = q / 2 + 1; l1 <= q; ++l1)
            for (unsigned l2 = q / 2; l2 <= q - 1; ++l2) {
                unsigned l3 = m / (2 * v) - l1 - l2;
                if (l3 < 1 || l3 > q) continue;
                std::array<unsigned, 3> jt{l1 * v, v - u + l2 * v, m / 2 + l3 * v};
                if (!seen.count(jt))
                    throw FalsificationError("deficit: certified minimal-order triple missing");
                ++certified;
            }
        rep.triples_at_min_order = certified;

        // Eq.-shape bound: the minimal-order family alone forces the deficit
        BigRational bound = BigRational(certified) * BigRational(bigint_pow(p, u) , bigint_pow(p, v));
        if (rep.deficit > -bound)
            throw FalsificationError("deficit: exceeds the minimal-order bound");
    }
    return rep;
}

} // namespace vdck
