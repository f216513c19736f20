#include "vdck/laurent.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "vdck/errors.hpp"

namespace vdck {

LaurentSeries::LaurentSeries(const Fp& fp, int start, std::vector<uint32_t> coeffs, int horizon)
    : fp_(fp), start_(start), horizon_(horizon), a_(std::move(coeffs)) {
    if (int(a_.size()) > horizon_ - start_ + 1)
        throw ConfigError("series: more coefficients than the horizon admits");
    for (auto& x : a_) x %= fp_.modulus();
    // unspecified trailing entries up to the horizon are known zeros
    size_t lead = 0;
    while (lead < a_.size() && a_[lead] == 0) ++lead;
    if (lead == a_.size()) {
        a_.clear();
        start_ = horizon_ + 1;
    } else {
        a_.erase(a_.begin(), a_.begin() + lead);
        start_ += int(lead);
        a_.resize(size_t(horizon_ - start_ + 1), 0);
    }
}

LaurentSeries LaurentSeries::zero(const Fp& fp, int horizon) {
    return LaurentSeries(fp, horizon + 1, {}, horizon);
}

uint32_t LaurentSeries::coeff(int i) const {
    if (i > horizon_)
        throw HorizonError("coefficient index " + std::to_string(i) +
                           " beyond certified horizon " + std::to_string(horizon_));
    if (a_.empty() || i < start_) return 0;
    return a_[size_t(i - start_)];
}

Degree LaurentSeries::degree() const {
    if (!a_.empty()) return Degree(-start_);
    if (exact_) {
        if (exact_->num.is_zero()) return Degree::neg_inf();
        return exact_->num.degree() + (-exact_->den.deg());
    }
    throw HorizonError("series vanishes to its horizon; degree is not certified");
}

std::vector<uint32_t> LaurentSeries::coeff_range(int first, int last) const {
    if (last > horizon_)
        throw HorizonError("coefficient range reaches beyond certified horizon");
    std::vector<uint32_t> out;
    out.reserve(size_t(last - first + 1));
    for (int i = first; i <= last; ++i) out.push_back(coeff(i));
    return out;
}

namespace {

RationalForm canonical(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw ConfigError("rational series: zero denominator");
    if (num.is_zero()) return {Poly::zero(num.field()), Poly::constant(num.field(), 1)};
    Poly g = poly_gcd(num, den);
    Poly n = poly_divmod(num, g).first;
    Poly d = poly_divmod(den, g).first;
    uint32_t s = n.field().inv(d.lead());
    return {n.scaled(s), d.monic()};
}

} // namespace

LaurentSeries from_rational(const Poly& num, const Poly& den, int horizon) {
    RationalForm rf = canonical(num, den);
    const Fp& fp = num.field();
    if (rf.num.is_zero()) {
        LaurentSeries z = LaurentSeries::zero(fp, horizon);
        z.set_exact(std::move(rf));
        return z;
    }
    if (horizon < 0) throw ConfigError("from_rational: horizon must be >= 0");
    int start = rf.den.deg() - rf.num.deg();
    if (start > horizon) {
        LaurentSeries z = LaurentSeries::zero(fp, horizon);
        z.set_exact(std::move(rf));
        return z;
    }
    // num/den = q * X^{-K} + r/(den X^K) with q = (num X^K) div den, so q
    // carries a_i at its X^{K-i} coefficient, exactly for i <= K.
    const int K = horizon;
    Poly q = poly_divmod(poly_shift(rf.num, size_t(K)), rf.den).first;
    std::vector<uint32_t> coeffs;
    coeffs.reserve(size_t(K - start + 1));
    for (int i = start; i <= K; ++i) coeffs.push_back(q.coeff(size_t(K - i)));
    LaurentSeries s(fp, start, std::move(coeffs), horizon);
    s.set_exact(std::move(rf));
    return s;
}

uint32_t paperfolding_digit(uint64_t n) {
    if (n == 0) throw ConfigError("paperfolding digit index starts at 1");
    while ((n & 1) == 0) n >>= 1;
    return (n & 3) == 1 ? 0 : 1;
}

LaurentSeries paperfolding_theta(int horizon) {
    if (horizon < 1) throw ConfigError("paperfolding horizon must be >= 1");
    Fp f3(3);
    std::vector<uint32_t> coeffs(size_t(horizon), 0);
    for (int i = 1; i <= horizon; ++i) coeffs[size_t(i - 1)] = paperfolding_digit(uint64_t(i));
    return LaurentSeries(f3, 1, std::move(coeffs), horizon);
}

LaurentSeries frac(const LaurentSeries& s) {
    const Fp& fp = s.field();
    std::optional<RationalForm> ex;
    if (s.exact())
        ex = canonical(poly_divmod(s.exact()->num, s.exact()->den).second, s.exact()->den);
    if (s.is_zero_to_horizon() || s.start() >= 1) {
        LaurentSeries out = s;
        if (ex) out.set_exact(std::move(*ex));
        return out;
    }
    std::vector<uint32_t> coeffs;
    for (int i = 1; i <= s.horizon(); ++i) coeffs.push_back(s.coeff(i));
    LaurentSeries out(fp, 1, std::move(coeffs), s.horizon());
    if (ex) out.set_exact(std::move(*ex));
    return out;
}

LaurentSeries mul_poly_shift(const LaurentSeries& s, const Poly& q, unsigned r) {
    const Fp& fp = s.field();
    std::optional<RationalForm> ex;
    if (s.exact()) {
        if (q.is_zero())
            ex = RationalForm{Poly::zero(fp), Poly::constant(fp, 1)};
        else
            ex = canonical(poly_mul(poly_shift(q, r), s.exact()->num), s.exact()->den);
    }
    if (q.is_zero()) {
        LaurentSeries z = LaurentSeries::zero(fp, s.horizon() - int(r));
        if (ex) z.set_exact(std::move(*ex));
        return z;
    }
    const int dq = q.deg();
    const int new_horizon = s.horizon() - int(r) - dq;
    if (s.is_zero_to_horizon()) {
        if (new_horizon < 0 && !ex)
            throw HorizonError("mul_poly_shift: no certified coefficients in result");
        LaurentSeries z = LaurentSeries::zero(fp, new_horizon);
        if (ex) z.set_exact(std::move(*ex));
        return z;
    }
    const int first = s.start() - int(r) - dq;
    if (first > new_horizon) {
        if (!ex) throw HorizonError("mul_poly_shift: no certified coefficients in result");
        LaurentSeries z = LaurentSeries::zero(fp, new_horizon);
        z.set_exact(std::move(*ex));
        return z;
    }
    const uint32_t p = fp.modulus();
    std::vector<uint32_t> coeffs;
    coeffs.reserve(size_t(new_horizon - first + 1));
    for (int i = first; i <= new_horizon; ++i) {
        uint64_t acc = 0;
        for (int t = 0; t <= dq; ++t) {
            uint32_t qt = q.coeff(size_t(t));
            if (qt) acc += uint64_t(qt) * s.coeff(i + int(r) + t);
        }
        coeffs.push_back(uint32_t(acc % p));
    }
    LaurentSeries out(fp, first, std::move(coeffs), new_horizon);
    if (ex) out.set_exact(std::move(*ex));
    return out;
}

LaurentSeries shift_frac(const LaurentSeries& s, unsigned r) {
    return frac(mul_poly_shift(s, Poly::constant(s.field(), 1), r));
}

namespace {

LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
    const Fp& fp = a.field();
    if (fp != b.field()) throw ConfigError("series over different fields");
    int horizon = std::min(a.horizon(), b.horizon());
    int first = horizon + 1;
    if (!a.is_zero_to_horizon()) first = std::min(first, a.start());
    if (!b.is_zero_to_horizon()) first = std::min(first, b.start());
    std::vector<uint32_t> coeffs;
    for (int i = first; i <= horizon; ++i) {
        uint32_t x = a.coeff(i), y = b.coeff(i);
        coeffs.push_back(subtract ? fp.sub(x, y) : fp.add(x, y));
    }
    LaurentSeries out(fp, first, std::move(coeffs), horizon);
    if (a.exact() && b.exact()) {
        const Poly& na = a.exact()->num;
        const Poly& da = a.exact()->den;
        const Poly& nb = b.exact()->num;
        const Poly& db = b.exact()->den;
        Poly cross_a = poly_mul(na, db), cross_b = poly_mul(nb, da);
        Poly num = subtract ? poly_sub(cross_a, cross_b) : poly_add(cross_a, cross_b);
        out.set_exact(canonical(num, poly_mul(da, db)));
    }
    return out;
}

} // namespace

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b) {
    return combine(a, b, false);
}
LaurentSeries series_sub(const LaurentSeries& a, const LaurentSeries& b) {
    return combine(a, b, true);
}

LaurentSeries truncated(const LaurentSeries& s, int new_horizon) {
    if (new_horizon > s.horizon())
        throw HorizonError("truncated: new horizon exceeds known coefficients");
    if (s.is_zero_to_horizon() || s.start() > new_horizon)
        return LaurentSeries::zero(s.field(), new_horizon);
    std::vector<uint32_t> coeffs;
    for (int i = s.start(); i <= new_horizon; ++i) coeffs.push_back(s.coeff(i));
    return LaurentSeries(s.field(), s.start(), std::move(coeffs), new_horizon);
}

LaurentSeries extend(const LaurentSeries& s, int new_horizon) {
    if (new_horizon <= s.horizon()) return s;
    if (!s.exact())
        throw HorizonError("extend: series has no exact tail to expand from");
    return from_rational(s.exact()->num, s.exact()->den, new_horizon);
}

CFExpansion cf_rational(const Poly& num, const Poly& den, size_t max_quotients) {
    RationalForm rf = canonical(num, den);
    CFExpansion cf(num.field());
    cf.horizon = std::numeric_limits<int>::max();
    auto [a0, rem] = poly_divmod(rf.num, rf.den);
    cf.a0 = a0;
    Poly x = rf.den, y = rem;
    int d = 0;
    while (!y.is_zero() && cf.quotients.size() < max_quotients) {
        auto [q, rr] = poly_divmod(x, y);
        d += q.deg();
        cf.quotients.push_back({q, true, true});
        cf.degrees.push_back(d);
        x = y;
        y = rr;
    }
    cf.terminated = y.is_zero();
    return cf;
}

CFExpansion continued_fraction(const LaurentSeries& s, size_t max_quotients) {
    const Fp& fp = s.field();
    if (s.is_zero_to_horizon() && !s.exact())
        throw ConfigError("continued fraction of a series with no certified coefficients");
    if (s.exact()) {
        CFExpansion cf = cf_rational(s.exact()->num, s.exact()->den, max_quotients);
        return cf;
    }

    CFExpansion cf(fp);
    // polynomial part
    std::vector<uint32_t> a0c;
    if (s.start() <= 0)
        for (int i = s.start(); i <= 0; ++i) {
            if (int(a0c.size()) < -i + 1) a0c.resize(size_t(-i + 1), 0);
            a0c[size_t(-i)] = s.coeff(i);
        }
    cf.a0 = Poly(fp, std::move(a0c));

    LaurentSeries f = frac(s);
    const int K = f.horizon();
    cf.horizon = K;
    if (f.is_zero_to_horizon() || K < 1) return cf;

    // Run the Euclidean algorithm on X^K and the truncation polynomial
    // sum a_i X^{K-i}. Quotient h of the truncation equals quotient h of
    // every series sharing a_1..a_K whenever d_{h-1} + d_h <= K, which is
    // the certification rule; its coefficients (not just the degree) are
    // pinned down under the stronger rule 2 d_h <= K.
    std::vector<uint32_t> ac(size_t(K), 0);
    for (int i = 1; i <= K; ++i) ac[size_t(K - i)] = f.coeff(i);
    Poly r_prev = Poly::monomial(fp, size_t(K));
    Poly r_cur(fp, std::move(ac));

    int d = 0;
    while (!r_cur.is_zero() && cf.quotients.size() < max_quotients) {
        auto [q, r_next] = poly_divmod(r_prev, r_cur);
        int d_new = d + q.deg();
        bool certified = d + d_new <= K;
        bool value_certified = 2 * d_new <= K;
        cf.quotients.push_back({q, certified, value_certified});
        cf.degrees.push_back(d_new);
        if (!certified) break; // one uncertified quotient kept for diagnostics
        d = d_new;
        r_prev = r_cur;
        r_cur = r_next;
    }
    return cf;
}

std::vector<Convergent> convergents(const CFExpansion& cf) {
    std::vector<Convergent> out;
    if (cf.quotients.empty()) return out;
    const Fp& fp = cf.a0.field();
    Poly p_prev = Poly::constant(fp, 1), p_cur = cf.a0;
    Poly q_prev = Poly::zero(fp), q_cur = Poly::constant(fp, 1);
    for (size_t h = 0; h < cf.quotients.size(); ++h) {
        if (!cf.quotients[h].certified) break;
        const Poly& a = cf.quotients[h].a;
        Poly p_new = poly_add(poly_mul(a, p_cur), p_prev);
        Poly q_new = poly_add(poly_mul(a, q_cur), q_prev);
        if (!(q_new.degree() == Degree(cf.degrees[h])))
            throw FalsificationError("convergent degree disagrees with quotient degrees");
        out.push_back({p_new, q_new, cf.degrees[h]});
        p_prev = p_cur;
        p_cur = p_new;
        q_prev = q_cur;
        q_cur = q_new;
    }
    return out;
}

std::string format_series(const LaurentSeries& s) {
    std::ostringstream os;
    os << s.field().modulus();
    if (s.is_zero_to_horizon()) {
        int start = std::min(1, s.horizon());
        os << " " << start;
        for (int i = start; i <= s.horizon(); ++i) os << " 0";
    } else {
        os << " " << s.start();
        for (int i = s.start(); i <= s.horizon(); ++i) os << " " << s.coeff(i);
    }
    return os.str();
}

LaurentSeries parse_series(const std::string& text) {
    std::istringstream is(text);
    long long p = 0, start = 0;
    if (!(is >> p >> start)) throw ConfigError("series text: expected 'p start a...'");
    if (p < 2 || p >= (1 << 16)) throw ConfigError("series text: bad modulus");
    Fp fp{uint32_t(p)};
    std::vector<uint32_t> coeffs;
    long long v;
    while (is >> v) {
        if (v < 0) throw ConfigError("series text: negative coefficient");
        coeffs.push_back(uint32_t(v % p));
    }
    if (coeffs.empty()) throw ConfigError("series text: no coefficients");
    int horizon = int(start) + int(coeffs.size()) - 1;
    return LaurentSeries(fp, int(start), std::move(coeffs), horizon);
}

} // namespace vdck
