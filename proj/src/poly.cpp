#include "vdck/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace vdck {

Poly Poly::monic() const {
    if (is_zero() || lead() == 1) return *this;
    return scaled(fp_.inv(lead()));
}

Poly Poly::scaled(uint32_t s) const {
    std::vector<uint32_t> out(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out[i] = fp_.mul(c_[i], s);
    return Poly(fp_, std::move(out));
}

Poly poly_add(const Poly& a, const Poly& b) {
    const Fp& fp = a.field();
    std::vector<uint32_t> out(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (size_t i = 0; i < out.size(); ++i) out[i] = fp.add(a.coeff(i), b.coeff(i));
    return Poly(fp, std::move(out));
}

Poly poly_sub(const Poly& a, const Poly& b) {
    const Fp& fp = a.field();
    std::vector<uint32_t> out(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (size_t i = 0; i < out.size(); ++i) out[i] = fp.sub(a.coeff(i), b.coeff(i));
    return Poly(fp, std::move(out));
}

Poly poly_mul(const Poly& a, const Poly& b) {
    const Fp& fp = a.field();
    if (a.is_zero() || b.is_zero()) return Poly::zero(fp);
    const uint32_t p = fp.modulus();
    std::vector<uint64_t> acc(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeff(i) == 0) continue;
        uint64_t ai = a.coeff(i);
        for (size_t j = 0; j < b.coeffs().size(); ++j) {
            acc[i + j] = (acc[i + j] + ai * b.coeff(j)) % p;
        }
    }
    std::vector<uint32_t> out(acc.begin(), acc.end());
    return Poly(fp, std::move(out));
}

Poly poly_shift(const Poly& a, size_t k) {
    if (a.is_zero() || k == 0) return a;
    std::vector<uint32_t> out(a.coeffs().size() + k, 0);
    std::copy(a.coeffs().begin(), a.coeffs().end(), out.begin() + k);
    return Poly(a.field(), std::move(out));
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw ConfigError("polynomial division by zero");
    const Fp& fp = a.field();
    if (a.is_zero() || a.deg() < b.deg())
        return {Poly::zero(fp), a};

    std::vector<uint32_t> rem = a.coeffs();
    const int db = b.deg();
    const uint32_t inv_lead = fp.inv(b.lead());
    std::vector<uint32_t> q(rem.size() - db, 0);
    for (int i = int(rem.size()) - 1; i >= db; --i) {
        if (rem[i] == 0) continue;
        uint32_t f = fp.mul(rem[i], inv_lead);
        q[i - db] = f;
        for (int j = 0; j <= db; ++j)
            rem[i - db + j] = fp.sub(rem[i - db + j], fp.mul(f, b.coeff(j)));
    }
    return {Poly(fp, std::move(q)), Poly(fp, std::move(rem))};
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = poly_divmod(x, y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(); i >= 0; --i) {
        uint32_t ci = coeff(size_t(i));
        if (ci == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << ci;
        } else {
            if (ci != 1) os << ci;
            os << "X";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace {

// Accepts sums of terms cX^e, cX, c (case-insensitive X, optional '*').
struct PolyParser {
    const Fp& fp;
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool parse_uint(uint64_t& out) {
        skip_ws();
        size_t start = pos;
        uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + uint64_t(s[pos] - '0');
            if (v > (1ull << 40)) throw ConfigError("coefficient or exponent too large: " + s);
            ++pos;
        }
        if (pos == start) return false;
        out = v;
        return true;
    }

    Poly run() {
        std::vector<uint32_t> coeffs;
        bool any = false;
        int sign = +1;
        skip_ws();
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            sign = s[pos] == '-' ? -1 : +1;
            ++pos;
        }
        while (true) {
            uint64_t c = 1;
            bool have_coeff = parse_uint(c);
            skip_ws();
            if (pos < s.size() && s[pos] == '*') { ++pos; skip_ws(); }
            uint64_t e = 0;
            bool have_x = pos < s.size() && (s[pos] == 'X' || s[pos] == 'x');
            if (have_x) {
                ++pos;
                e = 1;
                skip_ws();
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    if (!parse_uint(e)) throw ConfigError("missing exponent in polynomial: " + s);
                }
            }
            if (!have_coeff && !have_x)
                throw ConfigError("malformed polynomial: " + s);
            if (e > 4096) throw ConfigError("polynomial exponent too large: " + s);
            if (coeffs.size() < e + 1) coeffs.resize(e + 1, 0);
            uint32_t cv = uint32_t(c % fp.modulus());
            if (sign < 0) cv = fp.neg(cv);
            coeffs[e] = fp.add(coeffs[e], cv);
            any = true;
            skip_ws();
            if (pos >= s.size()) break;
            if (s[pos] == '+') { sign = +1; ++pos; }
            else if (s[pos] == '-') { sign = -1; ++pos; }
            else throw ConfigError("unexpected character in polynomial: " + s);
        }
        if (!any) throw ConfigError("empty polynomial: " + s);
        return Poly(fp, std::move(coeffs));
    }
};

} // namespace

Poly Poly::parse(const Fp& fp, const std::string& text) {
    PolyParser parser{fp, text};
    return parser.run();
}

} // namespace vdck
