#include "vdck/hankel.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "vdck/errors.hpp"
#include "vdck/parallel.hpp"

namespace vdck {

FpMatrix hankel_submatrix(const LaurentSeries& theta, size_t rows, size_t cols) {
    if (rows > 0 && cols > 0 && int(rows + cols) - 1 > theta.horizon())
        throw HorizonError("hankel_submatrix: block reaches beyond the horizon");
    FpMatrix m(theta.field(), rows, cols);
    for (size_t i = 1; i <= rows; ++i)
        for (size_t l = 0; l < cols; ++l)
            m.at(i - 1, l) = theta.coeff(int(i + l));
    return m;
}

std::set<size_t> regular_sizes(const LaurentSeries& theta, size_t m_max) {
    std::set<size_t> out;
    for (size_t m = 1; m <= m_max; ++m)
        if (mat_rank(hankel_submatrix(theta, m, m)) == m) out.insert(m);
    return out;
}

std::string DeficiencyReport::to_text() const {
    std::ostringstream os;
    os << "d_hat: " << d_hat << "\n";
    os << "max_certified_degree: " << max_certified_degree << "\n";
    os << "scanned_r: " << scanned_r << "\n";
    os << "horizon: " << horizon << "\n";
    os << "quotients_checked: " << quotients_checked << "\n";
    os << "rational_collapse: " << (rational_collapse_r ? "true" : "false") << "\n";
    if (rational_collapse_r) os << "rational_collapse_r: " << *rational_collapse_r << "\n";
    for (const auto& w : witnesses)
        os << "witness: r=" << w.r << " h=" << w.h << " deg=" << w.deg << "\n";
    return os.str();
}

namespace {

struct ShiftSummary {
    int max_deg = 0;
    size_t max_h = 0; // first quotient index attaining max_deg
    uint64_t checked = 0;
    bool terminated = false;
    bool no_data = false;
};

} // namespace

DeficiencyReport deficiency_scan(const LaurentSeries& theta, unsigned r_max,
                                 size_t max_quotients, unsigned threads) {
    if (theta.is_zero_to_horizon())
        throw ConfigError("deficiency_scan: theta has no certified nonzero coefficient");

    std::vector<ShiftSummary> per_r(size_t(r_max) + 1);
    parallel_chunks(size_t(r_max) + 1, threads, [&](size_t begin, size_t end) {
        for (size_t r = begin; r < end; ++r) {
            ShiftSummary& sum = per_r[r];
            LaurentSeries s = shift_frac(theta, unsigned(r));
            if (s.is_zero_to_horizon()) {
                sum.terminated = true;
                sum.no_data = !s.is_exact_zero();
                continue;
            }
            CFExpansion cf = continued_fraction(s, max_quotients);
            if (cf.terminated) sum.terminated = true;
            int prev = 0;
            for (size_t h = 0; h < cf.quotients.size(); ++h) {
                if (!cf.quotients[h].certified) break;
                int deg = cf.degrees[h] - prev;
                prev = cf.degrees[h];
                ++sum.checked;
                if (deg > sum.max_deg) {
                    sum.max_deg = deg;
                    sum.max_h = h + 1;
                }
            }
        }
    });

    DeficiencyReport rep;
    rep.horizon = theta.horizon();
    int global_max = 0;
    unsigned r;
    for (r = 0; r <= r_max; ++r) {
        const ShiftSummary& sum = per_r[r];
        if (sum.terminated) {
            rep.rational_collapse_r = r;
            rep.quotients_checked += sum.checked;
            global_max = std::max(global_max, sum.max_deg);
            break;
        }
        rep.quotients_checked += sum.checked;
        global_max = std::max(global_max, sum.max_deg);
    }
    rep.scanned_r = std::min(r, r_max);
    rep.max_certified_degree = global_max;
    rep.d_hat = std::max(0, global_max - 1);
    for (unsigned rr = 0; rr <= rep.scanned_r && rep.witnesses.size() < 32; ++rr)
        if (per_r[rr].max_deg == global_max && global_max > 0)
            rep.witnesses.push_back({rr, per_r[rr].max_h, per_r[rr].max_deg});
    return rep;
}

namespace {

// Best value seen by one worker, with the global enumeration index of the
// witness so merging is order-independent.
struct BruteBest {
    bool any = false;
    Degree exponent;
    uint64_t order = 0;
    unsigned r = 0;
    std::vector<uint32_t> q; // little-endian, monic

    void offer(Degree e, uint64_t ord, unsigned rr, const std::vector<uint32_t>& qq) {
        if (!any || e < exponent || (e == exponent && ord < order)) {
            any = true;
            exponent = e;
            order = ord;
            r = rr;
            q = qq;
        }
    }
};

// Enumeration of monic Q: flat index -> (deg, counter over lower coeffs).
struct MonicIndex {
    std::vector<uint64_t> first_of_deg; // flat index of the first Q of each degree
    uint64_t total = 0;

    MonicIndex(uint32_t p, int deg_max) {
        uint64_t acc = 0, pw = 1;
        for (int d = 0; d <= deg_max; ++d) {
            first_of_deg.push_back(acc);
            acc += pw; // p^d monic polynomials of degree d
            if (d < deg_max) pw *= p;
        }
        total = acc;
    }

    // coefficients of the idx-th monic polynomial
    std::vector<uint32_t> poly_at(uint32_t p, uint64_t idx) const {
        int d = int(first_of_deg.size()) - 1;
        while (d > 0 && first_of_deg[size_t(d)] > idx) --d;
        uint64_t c = idx - first_of_deg[size_t(d)];
        std::vector<uint32_t> q(size_t(d) + 1, 0);
        q[size_t(d)] = 1;
        for (int i = 0; i < d; ++i) {
            q[size_t(i)] = uint32_t(c % p);
            c /= p;
        }
        return q;
    }
};

} // namespace

BruteInfResult brute_inf(const LaurentSeries& theta, unsigned r_max, int deg_q_max,
                         unsigned threads) {
    if (deg_q_max < 0) throw ConfigError("brute_inf: deg_q_max must be >= 0");
    const Fp& fp = theta.field();
    const uint32_t p = fp.modulus();
    const int K = theta.horizon();

    const bool exact = theta.exact().has_value();
    if (!exact && int(r_max) + deg_q_max + 1 > K)
        throw HorizonError("brute_inf: horizon too small for the requested ranges");

    // prefetch fractional coefficients a_1..a_K
    std::vector<uint32_t> a(size_t(std::max(K, 0)) + 1, 0);
    for (int i = 1; i <= K; ++i) a[size_t(i)] = theta.coeff(i);

    MonicIndex idx(p, deg_q_max);
    std::vector<BruteBest> best(std::max(1u, effective_threads(threads)));
    std::atomic<unsigned> worker_seq{0};

    parallel_chunks(idx.total, threads, [&](size_t begin, size_t end) {
        BruteBest local;
        std::vector<uint32_t> c; // product coefficients c_i = sum_t q_t a_{i+t}
        std::vector<int> nn;     // next nonzero at or after i
        for (uint64_t qi = begin; qi < end; ++qi) {
            std::vector<uint32_t> q = idx.poly_at(p, qi);
            const int dq = int(q.size()) - 1;
            if (exact) {
                const Poly qq(fp, q);
                const Poly& den = theta.exact()->den;
                Poly cur = poly_divmod(poly_mul(qq, theta.exact()->num), den).second;
                const Poly x = Poly::monomial(fp, 1);
                for (unsigned r = 0; r <= r_max; ++r) {
                    uint64_t ord = qi * (uint64_t(r_max) + 1) + r;
                    if (cur.is_zero()) {
                        local.offer(Degree::neg_inf(), ord, r, q);
                        break;
                    }
                    local.offer(Degree(dq + cur.deg() - den.deg()), ord, r, q);
                    cur = poly_divmod(poly_mul(cur, x), den).second;
                }
                continue;
            }
            const int L = K - dq; // c_i certified for i <= L
            c.assign(size_t(L) + 2, 0);
            for (int i = 1; i <= L; ++i) {
                uint64_t acc = 0;
                for (int t = 0; t <= dq; ++t)
                    if (q[size_t(t)]) acc += uint64_t(q[size_t(t)]) * a[size_t(i + t)];
                c[size_t(i)] = uint32_t(acc % p);
            }
            nn.assign(size_t(L) + 2, L + 1);
            for (int i = L; i >= 1; --i) nn[size_t(i)] = c[size_t(i)] ? i : nn[size_t(i) + 1];
            for (unsigned r = 0; r <= r_max; ++r) {
                int i_star = nn[size_t(r) + 1];
                if (i_star > L)
                    throw HorizonError(
                        "brute_inf: ||X^r Q theta|| not certified within the horizon");
                uint64_t ord = qi * (uint64_t(r_max) + 1) + r;
                local.offer(Degree(dq + int(r) - i_star), ord, r, q);
            }
        }
        best[worker_seq.fetch_add(1)] = std::move(local);
    });

    BruteBest merged;
    for (const auto& b : best)
        if (b.any) merged.offer(b.exponent, b.order, b.r, b.q);
    if (!merged.any) throw ConfigError("brute_inf: nothing scanned");

    BruteInfResult out;
    out.exponent = merged.exponent;
    out.r = merged.r;
    out.witness_q = Poly(fp, merged.q);
    return out;
}

} // namespace vdck
