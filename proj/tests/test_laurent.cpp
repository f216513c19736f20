#include "doctest.h"

#include <array>

#include "test_util.hpp"
#include "vdck/laurent.hpp"

using namespace vdck;

TEST_SUITE_BEGIN("laurent");

TEST_CASE("from_rational geometric series") {
    Fp f3(3);
    // 1/(X-1) = sum X^{-i}
    LaurentSeries s = from_rational(Poly::constant(f3, 1), Poly(f3, {2, 1}), 5);
    CHECK(s.start() == 1);
    for (int i = 1; i <= 5; ++i) CHECK(s.coeff(i) == 1);
    CHECK_THROWS_AS(s.coeff(6), HorizonError);

    LaurentSeries x = from_rational(Poly::monomial(f3, 1), Poly::constant(f3, 1), 5);
    CHECK(x.start() == -1);
    CHECK(x.coeff(-1) == 1);
    for (int i = 0; i <= 5; ++i) CHECK(x.coeff(i) == 0);

    LaurentSeries z = from_rational(Poly::zero(f3), Poly(f3, {2, 1}), 5);
    CHECK(z.is_exact_zero());
    CHECK(z.degree().is_neg_inf());

    CHECK_THROWS_AS(from_rational(Poly::constant(f3, 1), Poly::zero(f3), 5), ConfigError);
}

TEST_CASE("paperfolding digits") {
    std::array<uint32_t, 8> expect{0, 0, 1, 0, 0, 1, 1, 0};
    for (size_t i = 0; i < 8; ++i) CHECK(paperfolding_digit(i + 1) == expect[i]);
    CHECK(paperfolding_digit(12) == 1); // 12 = 4*3, k = 3
    CHECK(paperfolding_digit(20) == 0); // 20 = 4*5, k = 5
    LaurentSeries theta = paperfolding_theta(16);
    CHECK(theta.start() == 3); // f_1 = f_2 = 0, f_3 = 1
    CHECK(theta.field().modulus() == 3);
    for (int i = 1; i <= 16; ++i) CHECK(theta.coeff(i) == paperfolding_digit(uint64_t(i)));
}

TEST_CASE("paperfolding self-similarity f_{2n} = f_n") {
    for (uint64_t n = 1; n <= 10000; ++n)
        CHECK(paperfolding_digit(2 * n) == paperfolding_digit(n));
}

TEST_CASE("frac examples") {
    Fp f3(3);
    // X + 1 + X^{-1}
    LaurentSeries s(f3, -1, {1, 1, 1}, 4);
    LaurentSeries f = frac(s);
    CHECK(f.start() == 1);
    CHECK(f.coeff(1) == 1);
    CHECK(f.coeff(2) == 0);
    CHECK(f.horizon() == 4);

    LaurentSeries already(f3, 2, {1}, 4);
    CHECK(frac(already).start() == 2);

    LaurentSeries x2 = from_rational(Poly::monomial(f3, 2), Poly::constant(f3, 1), 4);
    CHECK(frac(x2).is_exact_zero());
}

TEST_CASE("mul_poly_shift examples") {
    Fp f3(3);
    LaurentSeries geo = from_rational(Poly::constant(f3, 1), Poly(f3, {2, 1}), 10);

    LaurentSeries same = mul_poly_shift(geo, Poly::constant(f3, 1), 0);
    CHECK(same.start() == 1);
    CHECK(same.horizon() == 10);
    for (int i = 1; i <= 10; ++i) CHECK(same.coeff(i) == geo.coeff(i));

    // (X-1) * 1/(X-1) = 1: exact cancellation, frac = 0
    LaurentSeries one = mul_poly_shift(geo, Poly(f3, {2, 1}), 0);
    CHECK(one.start() == 0);
    CHECK(one.coeff(0) == 1);
    CHECK(frac(one).is_exact_zero());

    // X^2 * X^{-1} = X
    LaurentSeries xinv(f3, 1, {1}, 6);
    LaurentSeries x = mul_poly_shift(xinv, Poly::constant(f3, 1), 2);
    CHECK(x.start() == -1);
    CHECK(x.coeff(-1) == 1);
    CHECK(x.horizon() == 4); // precision tracked
}

TEST_CASE("horizon bookkeeping refuses to fabricate coefficients") {
    Fp f3(3);
    LaurentSeries s(f3, 1, {1, 2, 1}, 3); // no exact tail
    LaurentSeries shifted = mul_poly_shift(s, Poly(f3, {1, 1}), 1);
    CHECK(shifted.horizon() == 1);
    CHECK_THROWS_AS(shifted.coeff(2), HorizonError);

    // over-shifting keeps only the leading (polynomial-part) coefficients
    LaurentSeries big = mul_poly_shift(s, Poly(f3, {1, 1}), 5);
    CHECK(big.horizon() == -3);
    CHECK(big.start() == -5);
    CHECK_THROWS_AS(big.coeff(-2), HorizonError);

    // a series with no known nonzero coefficient has nothing left to shift
    CHECK_THROWS_AS(mul_poly_shift(LaurentSeries::zero(f3, 3), Poly(f3, {1, 1}), 5),
                    HorizonError);
}

TEST_CASE("continued fraction of rational series") {
    Fp f3(3);
    LaurentSeries geo = from_rational(Poly::constant(f3, 1), Poly(f3, {2, 1}), 10);
    CFExpansion cf = continued_fraction(geo, 16);
    CHECK(cf.a0.is_zero());
    REQUIRE(cf.quotients.size() == 1);
    CHECK(cf.quotients[0].a == Poly(f3, {2, 1})); // X+2 = X-1
    CHECK(cf.quotients[0].certified);
    CHECK(cf.terminated);
    CHECK(cf.degrees[0] == 1);
}

TEST_CASE("continued fraction splits polynomial part") {
    Fp f2(2);
    LaurentSeries s(f2, -1, {1, 1, 1}, 8); // X + 1 + X^{-1} + unknown tail
    CFExpansion cf = continued_fraction(s, 4);
    CHECK(cf.a0 == Poly(f2, {1, 1}));
    REQUIRE(!cf.quotients.empty());
    CHECK(cf.quotients[0].a == Poly::monomial(f2, 1));
    CHECK(cf.quotients[0].certified);
    CHECK_FALSE(cf.terminated);
}

TEST_CASE("paperfolding certified quotient degrees stay <= 4 at K = 64") {
    LaurentSeries theta = paperfolding_theta(64);
    CFExpansion cf = continued_fraction(theta, 100);
    size_t certified = cf.certified_count();
    CHECK(certified >= 10);
    int prev = 0;
    for (size_t h = 0; h < certified; ++h) {
        CHECK(cf.degrees[h] - prev <= 4);
        prev = cf.degrees[h];
    }
}

TEST_CASE("convergent examples") {
    Fp f3(3);
    CFExpansion cf(f3);
    cf.a0 = Poly::zero(f3);
    cf.quotients.push_back({Poly::monomial(f3, 1), true, true});
    cf.degrees.push_back(1);
    std::vector<Convergent> cs = convergents(cf);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].p == Poly::constant(f3, 1));
    CHECK(cs[0].q == Poly::monomial(f3, 1));
    CHECK(cs[0].d == 1);

    cf.quotients.push_back({Poly::monomial(f3, 1), true, true});
    cf.degrees.push_back(2);
    cs = convergents(cf);
    REQUIRE(cs.size() == 2);
    CHECK(cs[1].p == Poly::monomial(f3, 1)); // X
    CHECK(cs[1].q == Poly(f3, {1, 0, 1}));   // X^2+1
}

TEST_CASE("cf round-trip: final convergent reproduces the rational") {
    std::mt19937_64 rng(101);
    for (int iter = 0; iter < 200; ++iter) {
        uint32_t p = std::array<uint32_t, 3>{2, 3, 5}[testutil::below(rng, 3)];
        Fp fp(p);
        Poly den = testutil::random_monic_poly(rng, fp, 1 + int(testutil::below(rng, 10)));
        Poly num = testutil::random_poly(rng, fp, den.deg() - 1, true);
        CFExpansion cf = cf_rational(num, den, 64);
        CHECK(cf.terminated);
        for (const auto& q : cf.quotients) CHECK(q.a.deg() >= 1);
        if (cf.quotients.empty()) continue;
        std::vector<Convergent> cs = convergents(cf);
        const Convergent& last = cs.back();
        CHECK(poly_mul(num, last.q) == poly_mul(den, last.p));
    }
}

TEST_CASE("approximation identity deg(theta - P_h/Q_h) = -d_h - d_{h+1}") {
    std::mt19937_64 rng(202);
    for (int iter = 0; iter < 100; ++iter) {
        uint32_t p = std::array<uint32_t, 3>{2, 3, 5}[testutil::below(rng, 3)];
        Fp fp(p);
        Poly den = testutil::random_monic_poly(rng, fp, 3 + int(testutil::below(rng, 8)));
        Poly num = testutil::random_poly(rng, fp, den.deg() - 1, true);
        CFExpansion cf = cf_rational(num, den, 64);
        std::vector<Convergent> cs = convergents(cf);
        for (size_t h = 0; h + 1 < cs.size(); ++h) {
            Poly diff_num = poly_sub(poly_mul(num, cs[h].q), poly_mul(cs[h].p, den));
            Poly diff_den = poly_mul(den, cs[h].q);
            REQUIRE(!diff_num.is_zero());
            int deg = diff_num.deg() - diff_den.deg();
            CHECK(deg == -cf.degrees[h] - cf.degrees[h + 1]);
        }
    }
}

TEST_CASE("best approximation property of convergents") {
    std::mt19937_64 rng(303);
    int checked = 0;
    for (int iter = 0; iter < 100; ++iter) {
        uint32_t p = std::array<uint32_t, 3>{2, 3, 5}[testutil::below(rng, 3)];
        Fp fp(p);
        Poly den = testutil::random_monic_poly(rng, fp, 2 + int(testutil::below(rng, 11)));
        Poly num = testutil::random_poly(rng, fp, den.deg() - 1, true);
        Poly g = poly_gcd(num, den);
        Poly rnum = poly_divmod(num, g).first;
        Poly rden = poly_divmod(den, g).first;
        if (rden.deg() < 1) continue;
        CFExpansion cf = cf_rational(rnum, rden, 64);
        std::vector<Convergent> cs = convergents(cf);

        auto frac_deg = [&](const Poly& k) {
            Poly rem = poly_divmod(poly_mul(k, rnum), rden).second;
            return rem.is_zero() ? Degree::neg_inf() : Degree(rem.deg() - rden.deg());
        };

        for (size_t h = 0; h + 1 < cs.size(); ++h) {
            int d_lo = cf.degrees[h], d_hi = cf.degrees[h + 1];
            CHECK(frac_deg(cs[h].q) == Degree(-d_hi)); // equality at Q_h
            for (int dk = d_lo; dk < d_hi; ++dk) {
                uint64_t count = 1;
                for (int i = 0; i < dk + 1 && count <= 2187; ++i) count *= p;
                bool exhaustive = count <= 2187;
                uint64_t trials = exhaustive ? count : 50;
                for (uint64_t t = 0; t < trials; ++t) {
                    std::vector<uint32_t> kc(size_t(dk) + 1);
                    if (exhaustive) {
                        uint64_t v = t;
                        for (auto& c : kc) {
                            c = uint32_t(v % p);
                            v /= p;
                        }
                    } else {
                        for (auto& c : kc) c = uint32_t(testutil::below(rng, p));
                    }
                    if (kc[size_t(dk)] == 0) kc[size_t(dk)] = 1;
                    Poly k(fp, kc);
                    CHECK(frac_deg(k) >= Degree(-d_hi));
                    ++checked;
                }
            }
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("truncation certification matches ground truth") {
    std::mt19937_64 rng(404);
    int degree_checks = 0, value_checks = 0;
    for (int iter = 0; iter < 150; ++iter) {
        uint32_t p = std::array<uint32_t, 3>{2, 3, 5}[testutil::below(rng, 3)];
        Fp fp(p);
        Poly den = testutil::random_monic_poly(rng, fp, 3 + int(testutil::below(rng, 10)));
        Poly num = testutil::random_poly(rng, fp, den.deg() - 1, true);
        CFExpansion truth = cf_rational(num, den, 64);

        int K = 2 + int(testutil::below(rng, 40));
        LaurentSeries full = from_rational(num, den, K);
        if (full.is_zero_to_horizon()) continue;
        LaurentSeries trunc = truncated(full, K); // drops the exact tail
        CHECK_FALSE(trunc.exact().has_value());
        CFExpansion got = continued_fraction(trunc, 64);
        CHECK_FALSE(got.terminated);

        for (size_t h = 0; h < got.quotients.size(); ++h) {
            if (!got.quotients[h].certified) break;
            REQUIRE(h < truth.quotients.size());
            // the certification rule pins down the quotient degree
            CHECK(got.quotients[h].a.deg() == truth.quotients[h].a.deg());
            CHECK(got.degrees[h] == truth.degrees[h]);
            ++degree_checks;
            if (got.quotients[h].value_certified) {
                CHECK(got.quotients[h].a == truth.quotients[h].a);
                ++value_checks;
            }
        }
    }
    CHECK(degree_checks > 300);
    CHECK(value_checks > 200);
}

TEST_CASE("series text round-trip") {
    Fp f5(5);
    LaurentSeries s(f5, -2, {3, 0, 1, 4, 0, 2}, 3);
    LaurentSeries back = parse_series(format_series(s));
    CHECK(back.field().modulus() == 5);
    CHECK(back.start() == s.start());
    CHECK(back.horizon() == s.horizon());
    for (int i = s.start(); i <= s.horizon(); ++i) CHECK(back.coeff(i) == s.coeff(i));

    LaurentSeries z = LaurentSeries::zero(f5, 4);
    LaurentSeries zback = parse_series(format_series(z));
    CHECK(zback.is_zero_to_horizon());
    CHECK(zback.horizon() == 4);

    CHECK_THROWS_AS(parse_series("4 1 1"), ConfigError); // 4 not prime
    CHECK_THROWS_AS(parse_series("3"), ConfigError);     // no coefficients
}

TEST_SUITE_END();
