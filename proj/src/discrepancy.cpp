#include "vdck/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vdck/digital.hpp"
#include "vdck/errors.hpp"

namespace vdck {

using boost::multiprecision::denominator;
using boost::multiprecision::lcm;
using boost::multiprecision::numerator;

PointSet::PointSet(unsigned s, const std::vector<std::vector<BigRational>>& points) {
    if (s < 1 || s > 3) throw ConfigError("point set dimension must be 1, 2 or 3");
    if (points.empty()) throw ConfigError("point set must be nonempty");
    s_ = s;
    den_.assign(s, BigInt(1));
    for (const auto& row : points) {
        if (row.size() != s) throw ConfigError("point row has wrong dimension");
        for (unsigned i = 0; i < s; ++i) den_[i] = lcm(den_[i], denominator(row[i]));
    }
    nums_.reserve(points.size());
    for (const auto& row : points) {
        std::array<BigInt, 3> nn{BigInt(0), BigInt(0), BigInt(0)};
        for (unsigned i = 0; i < s; ++i) {
            nn[i] = numerator(row[i]) * (den_[i] / denominator(row[i]));
            if (nn[i] < 0 || nn[i] >= den_[i])
                throw ConfigError("point coordinate outside [0, 1)");
        }
        nums_.push_back(std::move(nn));
    }
}

PointSet PointSet::prefix(size_t count) const {
    if (count == 0 || count > size()) throw ConfigError("prefix size out of range");
    PointSet out;
    out.s_ = s_;
    out.den_ = den_;
    out.nums_.assign(nums_.begin(), nums_.begin() + long(count));
    return out;
}

BigRational local_star_discrepancy(const PointSet& ps, const std::vector<BigRational>& box,
                                   bool attained) {
    if (box.size() != ps.dim()) throw ConfigError("witness box has wrong dimension");
    size_t count = 0;
    for (size_t n = 0; n < ps.size(); ++n) {
        bool inside = true;
        for (unsigned i = 0; i < ps.dim() && inside; ++i) {
            BigRational c = ps.coord(n, i);
            inside = attained ? c < box[i] : c <= box[i];
        }
        if (inside) ++count;
    }
    BigRational vol = 1;
    for (const auto& b : box) vol *= b;
    BigRational frac_count(BigInt(count), BigInt(ps.size()));
    return attained ? vol - frac_count : frac_count - vol;
}

namespace {

struct Axis {
    std::vector<BigInt> uniq;
    std::vector<size_t> idx; // per point
};

std::vector<Axis> build_axes(const PointSet& ps) {
    std::vector<Axis> axes(ps.dim());
    for (unsigned i = 0; i < ps.dim(); ++i) {
        Axis& ax = axes[i];
        for (size_t n = 0; n < ps.size(); ++n) ax.uniq.push_back(ps.num(n, i));
        std::sort(ax.uniq.begin(), ax.uniq.end());
        ax.uniq.erase(std::unique(ax.uniq.begin(), ax.uniq.end()), ax.uniq.end());
        ax.idx.resize(ps.size());
        for (size_t n = 0; n < ps.size(); ++n)
            ax.idx[n] = size_t(std::lower_bound(ax.uniq.begin(), ax.uniq.end(), ps.num(n, i)) -
                               ax.uniq.begin());
    }
    return axes;
}

template <typename I>
I conv(const BigInt& x) {
    return x.template convert_to<I>();
}
template <>
BigInt conv<BigInt>(const BigInt& x) {
    return x;
}

// Best term of one family over the candidate grid, as a raw integer value on
// the common denominator N * prod(den_i), plus the winning grid indices.
template <typename I>
struct SweepBest {
    bool any = false;
    I raw{};
    std::array<size_t, 3> t{0, 0, 0};

    void offer(const I& value, size_t t1, size_t t2 = 0, size_t t3 = 0) {
        if (!any || value > raw) {
            any = true;
            raw = value;
            t = {t1, t2, t3};
        }
    }
};

// Candidate numerator arrays. For the attained family the box bound at grid
// step t is uniq[t] (or 1 at the end) counted with strict inequality; for the
// limit family it is 0 (at t = 0) or uniq[t-1] counted with <=. Both share
// the same point-insertion schedule: points with value index < t are active.
template <typename I>
std::vector<I> candidates(const Axis& ax, const BigInt& den, bool attained) {
    std::vector<I> c;
    c.reserve(ax.uniq.size() + 1);
    if (attained) {
        for (const auto& u : ax.uniq) c.push_back(conv<I>(u));
        c.push_back(conv<I>(den));
    } else {
        c.push_back(I(0));
        for (const auto& u : ax.uniq) c.push_back(conv<I>(u));
    }
    return c;
}

template <typename I>
void sweep1(const PointSet& ps, const std::vector<Axis>& axes, SweepBest<I>& outer,
            SweepBest<I>& inner) {
    const I n_total = I(long(ps.size()));
    const I d1 = conv<I>(ps.axis_den(0));
    std::vector<I> co = candidates<I>(axes[0], ps.axis_den(0), true);
    std::vector<I> ci = candidates<I>(axes[0], ps.axis_den(0), false);
    std::vector<size_t> bucket(axes[0].uniq.size(), 0);
    for (size_t n = 0; n < ps.size(); ++n) ++bucket[axes[0].idx[n]];
    I active = I(0);
    for (size_t t = 0; t <= axes[0].uniq.size(); ++t) {
        if (t > 0) active += I(long(bucket[t - 1]));
        outer.offer(n_total * co[t] - active * d1, t);
        inner.offer(active * d1 - n_total * ci[t], t);
    }
}

template <typename I>
void sweep2(const PointSet& ps, const std::vector<Axis>& axes, SweepBest<I>& outer,
            SweepBest<I>& inner) {
    const I n_total = I(long(ps.size()));
    const I d12 = conv<I>(ps.axis_den(0)) * conv<I>(ps.axis_den(1));
    std::vector<I> co1 = candidates<I>(axes[0], ps.axis_den(0), true);
    std::vector<I> ci1 = candidates<I>(axes[0], ps.axis_den(0), false);
    std::vector<I> co2 = candidates<I>(axes[1], ps.axis_den(1), true);
    std::vector<I> ci2 = candidates<I>(axes[1], ps.axis_den(1), false);

    const size_t u1 = axes[0].uniq.size(), u2 = axes[1].uniq.size();
    std::vector<std::vector<size_t>> byx(u1);
    for (size_t n = 0; n < ps.size(); ++n) byx[axes[0].idx[n]].push_back(axes[1].idx[n]);

    std::vector<size_t> hist(u2, 0);
    for (size_t t1 = 0; t1 <= u1; ++t1) {
        if (t1 > 0)
            for (size_t iy : byx[t1 - 1]) ++hist[iy];
        const I fo = n_total * co1[t1];
        const I fi = n_total * ci1[t1];
        I prefix = I(0);
        for (size_t t2 = 0; t2 <= u2; ++t2) {
            if (t2 > 0) prefix += I(long(hist[t2 - 1]));
            I scaled = prefix * d12;
            outer.offer(fo * co2[t2] - scaled, t1, t2);
            inner.offer(scaled - fi * ci2[t2], t1, t2);
        }
    }
}

template <typename I>
void sweep3(const PointSet& ps, const std::vector<Axis>& axes, SweepBest<I>& outer,
            SweepBest<I>& inner) {
    const I n_total = I(long(ps.size()));
    const I d123 =
        conv<I>(ps.axis_den(0)) * conv<I>(ps.axis_den(1)) * conv<I>(ps.axis_den(2));
    std::array<std::vector<I>, 3> co, ci;
    for (unsigned i = 0; i < 3; ++i) {
        co[i] = candidates<I>(axes[i], ps.axis_den(i), true);
        ci[i] = candidates<I>(axes[i], ps.axis_den(i), false);
    }
    const size_t u1 = axes[0].uniq.size(), u2 = axes[1].uniq.size(), u3 = axes[2].uniq.size();
    std::vector<std::vector<size_t>> byz(u3);
    for (size_t n = 0; n < ps.size(); ++n) byz[axes[2].idx[n]].push_back(n);

    std::vector<std::vector<size_t>> byx(u1); // active points, grouped by x index
    std::vector<size_t> hist(u2, 0);
    for (size_t t3 = 0; t3 <= u3; ++t3) {
        if (t3 > 0)
            for (size_t n : byz[t3 - 1]) byx[axes[0].idx[n]].push_back(axes[1].idx[n]);
        std::fill(hist.begin(), hist.end(), 0);
        for (size_t t1 = 0; t1 <= u1; ++t1) {
            if (t1 > 0)
                for (size_t iy : byx[t1 - 1]) ++hist[iy];
            const I fo = n_total * co[0][t1] * co[2][t3];
            const I fi = n_total * ci[0][t1] * ci[2][t3];
            I prefix = I(0);
            for (size_t t2 = 0; t2 <= u2; ++t2) {
                if (t2 > 0) prefix += I(long(hist[t2 - 1]));
                I scaled = prefix * d123;
                outer.offer(fo * co[1][t2] - scaled, t1, t2, t3);
                inner.offer(scaled - fi * ci[1][t2], t1, t2, t3);
            }
        }
    }
}

std::vector<BigRational> witness_box(const PointSet& ps, const std::vector<Axis>& axes,
                                     const std::array<size_t, 3>& t, bool attained) {
    std::vector<BigRational> box;
    for (unsigned i = 0; i < ps.dim(); ++i) {
        size_t ti = t[i];
        if (attained) {
            box.push_back(ti < axes[i].uniq.size()
                              ? BigRational(axes[i].uniq[ti], ps.axis_den(i))
                              : BigRational(1));
        } else {
            box.push_back(ti == 0 ? BigRational(0)
                                  : BigRational(axes[i].uniq[ti - 1], ps.axis_den(i)));
        }
    }
    return box;
}

template <typename I>
DiscResult run_exact(const PointSet& ps, const std::vector<Axis>& axes) {
    SweepBest<I> outer, inner;
    switch (ps.dim()) {
        case 1: sweep1<I>(ps, axes, outer, inner); break;
        case 2: sweep2<I>(ps, axes, outer, inner); break;
        default: sweep3<I>(ps, axes, outer, inner); break;
    }
    // Recompute both candidate values exactly; this doubles as the witness
    // validity guarantee.
    std::vector<BigRational> obox = witness_box(ps, axes, outer.t, true);
    std::vector<BigRational> ibox = witness_box(ps, axes, inner.t, false);
    BigRational oval = local_star_discrepancy(ps, obox, true);
    BigRational ival = local_star_discrepancy(ps, ibox, false);

    DiscResult res;
    res.n = ps.size();
    if (oval >= ival) {
        res.dstar = oval;
        res.witness = obox;
        res.attained = true;
    } else {
        res.dstar = ival;
        res.witness = ibox;
        res.attained = false;
    }
    return res;
}

// every raw term is bounded by N * prod(den_i) in absolute value
bool fits_int128(const PointSet& ps) {
    BigInt prod = ps.size();
    for (unsigned i = 0; i < ps.dim(); ++i) prod *= ps.axis_den(i);
    return boost::multiprecision::msb(prod) < 120;
}

} // namespace

DiscResult star_discrepancy_exact(const PointSet& ps) {
    static const size_t budget[4] = {0, 200000, 20000, 4096};
    if (ps.size() > budget[ps.dim()])
        throw BudgetError("star_discrepancy_exact: N exceeds the budget for s = " +
                          std::to_string(ps.dim()));
    std::vector<Axis> axes = build_axes(ps);
    if (fits_int128(ps)) return run_exact<__int128>(ps, axes);
    return run_exact<BigInt>(ps, axes);
}

DiscResult star_discrepancy_naive(const PointSet& ps) {
    if (ps.size() > 128) throw BudgetError("star_discrepancy_naive: N must be <= 128");
    std::vector<Axis> axes = build_axes(ps);
    const unsigned s = ps.dim();

    // raw terms on the common denominator N * prod(den_i), recounted from
    // scratch for every box
    BigInt dprod = 1;
    for (unsigned i = 0; i < s; ++i) dprod *= ps.axis_den(i);
    const BigInt n_total = ps.size();

    SweepBest<BigInt> best[2];
    for (int family = 0; family < 2; ++family) {
        const bool attained = family == 0;
        std::array<std::vector<BigInt>, 3> cand;
        for (unsigned i = 0; i < s; ++i)
            cand[i] = candidates<BigInt>(axes[i], ps.axis_den(i), attained);
        std::array<size_t, 3> t{0, 0, 0};
        while (true) {
            BigInt prod = cand[0][t[0]];
            for (unsigned i = 1; i < s; ++i) prod *= cand[i][t[i]];
            long count = 0;
            for (size_t n = 0; n < ps.size(); ++n) {
                bool inside = true;
                for (unsigned i = 0; i < s && inside; ++i)
                    inside = attained ? ps.num(n, i) < cand[i][t[i]]
                                      : ps.num(n, i) <= cand[i][t[i]];
                count += inside;
            }
            BigInt raw;
            if (attained)
                raw = n_total * prod - count * dprod;
            else
                raw = count * dprod - n_total * prod;
            best[family].offer(raw, t[0], t[1], t[2]);
            unsigned i = 0;
            for (; i < s; ++i) {
                if (++t[i] < cand[i].size()) break;
                t[i] = 0;
            }
            if (i == s) break;
        }
    }

    std::vector<BigRational> obox = witness_box(ps, axes, best[0].t, true);
    std::vector<BigRational> ibox = witness_box(ps, axes, best[1].t, false);
    BigRational oval = local_star_discrepancy(ps, obox, true);
    BigRational ival = local_star_discrepancy(ps, ibox, false);

    DiscResult res;
    res.n = ps.size();
    if (oval >= ival) {
        res.dstar = oval;
        res.witness = obox;
        res.attained = true;
    } else {
        res.dstar = ival;
        res.witness = ibox;
        res.attained = false;
    }
    return res;
}

PointSet extend_with_index(const PointSet& ps, uint32_t p, unsigned m) {
    if (ps.dim() > 2) throw ConfigError("extend_with_index: resulting dimension exceeds 3");
    BigInt pm = bigint_pow(p, m);
    if (BigInt(ps.size()) != pm)
        throw ConfigError("extend_with_index: point count must equal p^m");
    std::vector<std::vector<BigRational>> rows;
    rows.reserve(ps.size());
    for (size_t n = 0; n < ps.size(); ++n) {
        std::vector<BigRational> row;
        for (unsigned i = 0; i < ps.dim(); ++i) row.push_back(ps.coord(n, i));
        row.push_back(BigRational(BigInt(n), pm));
        rows.push_back(std::move(row));
    }
    return PointSet(ps.dim() + 1, rows);
}

PointSet sequence_point_set(const LaurentSeries& theta, unsigned k, unsigned depth) {
    const Fp& fp = theta.field();
    const uint32_t p = fp.modulus();
    if (theta.horizon() < int(depth + k))
        throw HorizonError("sequence_point_set: horizon must cover depth + k");
    BigInt total = bigint_pow(p, k);
    if (total > BigInt(1 << 26)) throw BudgetError("sequence_point_set: p^k too large");
    const uint64_t count = uint64_t(total);

    const BigInt den2 = bigint_pow(p, depth);
    std::vector<std::vector<BigRational>> rows;
    rows.reserve(count);
    std::vector<uint32_t> nvec(k, 0);
    for (uint64_t n = 0; n < count; ++n) {
        if (n > 0) {
            // increment base-p digit counter
            for (size_t i = 0; i < nvec.size(); ++i) {
                if (++nvec[i] < p) break;
                nvec[i] = 0;
            }
        }
        BigInt num2 = 0;
        for (unsigned j = 1; j <= depth; ++j) {
            uint64_t acc = 0;
            for (unsigned l = 0; l < k; ++l)
                if (nvec[l]) acc += uint64_t(theta.coeff(int(j + l))) * nvec[l];
            num2 *= p;
            num2 += uint32_t(acc % p);
        }
        rows.push_back({radical_inverse(p, n), BigRational(num2, den2)});
    }
    return PointSet(2, rows);
}

std::string GrowthResult::rows_csv() const {
    std::ostringstream os;
    os << "k,N,Dstar_num,Dstar_den,NDstar\n";
    for (const auto& r : rows)
        os << r.k << "," << r.n << "," << numerator(r.dstar).str() << ","
           << denominator(r.dstar).str() << "," << rational_str(r.n_dstar) << "\n";
    return os.str();
}

std::string GrowthResult::fit_text() const {
    std::ostringstream os;
    os << "fit_log2N_slope: " << fit.a_log2 << "\n";
    os << "fit_log2N_intercept: " << fit.b_log2 << "\n";
    os << "fit_log2N_sse: " << fit.sse_log2 << "\n";
    os << "fit_logN_slope: " << fit.a_log << "\n";
    os << "fit_logN_intercept: " << fit.b_log << "\n";
    os << "fit_logN_sse: " << fit.sse_log << "\n";
    os << "note: fit coefficients are floating point approximations\n";
    return os.str();
}

namespace {

void least_squares(const std::vector<double>& u, const std::vector<double>& y, double& a,
                   double& b, double& sse) {
    const size_t n = u.size();
    double um = 0, ym = 0;
    for (size_t i = 0; i < n; ++i) {
        um += u[i];
        ym += y[i];
    }
    um /= double(n);
    ym /= double(n);
    double cov = 0, var = 0;
    for (size_t i = 0; i < n; ++i) {
        cov += (u[i] - um) * (y[i] - ym);
        var += (u[i] - um) * (u[i] - um);
    }
    a = var > 0 ? cov / var : 0;
    b = ym - a * um;
    sse = 0;
    for (size_t i = 0; i < n; ++i) {
        double r = y[i] - a * u[i] - b;
        sse += r * r;
    }
}

} // namespace

GrowthFit fit_growth(const std::vector<GrowthRow>& rows) {
    GrowthFit fit;
    if (rows.size() < 2) return fit;
    std::vector<double> lg, lg2, y;
    for (const auto& r : rows) {
        double ln = std::log(double(r.n));
        lg.push_back(ln);
        lg2.push_back(ln * ln);
        y.push_back(numerator(r.n_dstar).convert_to<double>() /
                    denominator(r.n_dstar).convert_to<double>());
    }
    least_squares(lg2, y, fit.a_log2, fit.b_log2, fit.sse_log2);
    least_squares(lg, y, fit.a_log, fit.b_log, fit.sse_log);
    return fit;
}

GrowthResult growth_sweep(const LaurentSeries& theta, unsigned k_max, unsigned depth_margin) {
    if (k_max == 0) throw ConfigError("growth_sweep: k_max must be >= 1");
    GrowthResult out;
    for (unsigned k = 1; k <= k_max; ++k) {
        PointSet ps = sequence_point_set(theta, k, k + depth_margin);
        DiscResult d = star_discrepancy_exact(ps);
        GrowthRow row;
        row.k = k;
        row.n = uint64_t(ps.size());
        row.dstar = d.dstar;
        row.n_dstar = d.dstar * BigRational(BigInt(ps.size()));
        out.rows.push_back(row);
    }
    out.fit = fit_growth(out.rows);
    return out;
}

} // namespace vdck
