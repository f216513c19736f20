#include "doctest.h"
#include <array>

#include "test_util.hpp"
#include "vdck/matrix.hpp"
#include "vdck/poly.hpp"

using namespace vdck;

TEST_SUITE_BEGIN("algebra");

TEST_CASE("fp basics") {
    Fp f3(3);
    CHECK(f3.add(2, 2) == 1);
    CHECK(f3.sub(0, 1) == 2);
    CHECK(f3.mul(2, 2) == 1);
    CHECK(f3.inv(2) == 2);
    CHECK_THROWS_AS(Fp(4), ConfigError);
    CHECK_THROWS_AS(Fp(1), ConfigError);
    CHECK(Fp::is_prime(65521));
    CHECK_FALSE(Fp::is_prime(65536));
    Fp big(65521);
    CHECK(big.mul(big.inv(12345), 12345) == 1);
}

TEST_CASE("degree sentinel is total") {
    CHECK(Degree::neg_inf() < Degree(-1000000));
    CHECK(Degree(3) + Degree::neg_inf() == Degree::neg_inf());
    CHECK(Degree(2) + 3 == Degree(5));
    CHECK_THROWS_AS(Degree::neg_inf().value(), ConfigError);
    CHECK(Poly::zero(Fp(3)).degree().is_neg_inf());
}

TEST_CASE("poly_mul examples") {
    Fp f3(3), f2(2);
    // (X+1)(X+2) = X^2+2 over F_3
    Poly a(f3, {1, 1}), b(f3, {2, 1});
    CHECK(poly_mul(a, b) == Poly(f3, {2, 0, 1}));
    // (X+1)^2 = X^2+1 over F_2
    Poly c(f2, {1, 1});
    CHECK(poly_mul(c, c) == Poly(f2, {1, 0, 1}));
    CHECK(poly_mul(a, Poly::zero(f3)).is_zero());
}

TEST_CASE("poly_divmod examples") {
    Fp f3(3);
    Poly x2 = Poly::monomial(f3, 2);
    Poly xp1(f3, {1, 1});
    auto [q, r] = poly_divmod(x2, xp1);
    CHECK(q == Poly(f3, {2, 1})); // X+2
    CHECK(r == Poly::constant(f3, 1));

    auto [q2, r2] = poly_divmod(xp1, xp1);
    CHECK(q2 == Poly::constant(f3, 1));
    CHECK(r2.is_zero());

    auto [q3, r3] = poly_divmod(xp1, x2);
    CHECK(q3.is_zero());
    CHECK(r3 == xp1);

    CHECK_THROWS_AS(poly_divmod(xp1, Poly::zero(f3)), ConfigError);
}

TEST_CASE("poly divmod round-trip on random pairs") {
    std::mt19937_64 rng(20240811);
    for (int iter = 0; iter < 1000; ++iter) {
        uint32_t p = std::array<uint32_t, 3>{2, 3, 5}[testutil::below(rng, 3)];
        Fp fp(p);
        Poly a = testutil::random_poly(rng, fp, 12);
        Poly b = testutil::random_poly(rng, fp, 6, true);
        auto [q, r] = poly_divmod(a, b);
        CHECK(poly_add(poly_mul(q, b), r) == a);
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("poly parse and print") {
    Fp f3(3);
    CHECK(Poly::parse(f3, "X^2+2X+1") == Poly(f3, {1, 2, 1}));
    CHECK(Poly::parse(f3, "x+2") == Poly(f3, {2, 1}));
    CHECK(Poly::parse(f3, "5") == Poly::constant(f3, 2));
    CHECK(Poly::parse(f3, "X^3 + 2") == Poly(f3, {2, 0, 0, 1}));
    CHECK(Poly::parse(f3, "X-1") == Poly(f3, {2, 1}));
    CHECK(Poly(f3, {2, 0, 1}).str() == "X^2+2");
    CHECK(Poly::zero(f3).str() == "0");
    CHECK_THROWS_AS(Poly::parse(f3, "X^+"), ConfigError);
}

TEST_CASE("gcd is monic and divides") {
    std::mt19937_64 rng(7);
    Fp f5(5);
    for (int iter = 0; iter < 200; ++iter) {
        Poly a = testutil::random_poly(rng, f5, 8);
        Poly b = testutil::random_poly(rng, f5, 8);
        Poly g = poly_gcd(a, b);
        if (a.is_zero() && b.is_zero()) {
            CHECK(g.is_zero());
            continue;
        }
        CHECK(g.is_monic());
        if (!a.is_zero()) CHECK(poly_divmod(a, g).second.is_zero());
        if (!b.is_zero()) CHECK(poly_divmod(b, g).second.is_zero());
    }
}

TEST_CASE("mat_rank examples") {
    Fp f3(3);
    CHECK(mat_rank(FpMatrix::identity(f3, 2)) == 2);

    FpMatrix ones(f3, 2, 2);
    ones.at(0, 0) = ones.at(0, 1) = ones.at(1, 0) = ones.at(1, 1) = 1;
    CHECK(mat_rank(ones) == 1);

    CHECK(mat_rank(FpMatrix(f3, 3, 4)) == 0);
}

TEST_CASE("solve_affine examples") {
    Fp f3(3);
    FpMatrix id = FpMatrix::identity(f3, 3);
    AffineSolution s = solve_affine(id, {1, 2, 0});
    CHECK(s.consistent);
    CHECK(s.nullity == 0);
    CHECK(s.particular == std::vector<uint32_t>{1, 2, 0});

    FpMatrix z(f3, 1, 2);
    AffineSolution bad = solve_affine(z, {1});
    CHECK_FALSE(bad.consistent);

    AffineSolution free2 = solve_affine(z, {0});
    CHECK(free2.consistent);
    CHECK(free2.nullity == 2); // p^2 solutions
}

TEST_CASE("solve_affine agrees with exhaustive enumeration") {
    std::mt19937_64 rng(424242);
    for (int iter = 0; iter < 120; ++iter) {
        uint32_t p = std::array<uint32_t, 3>{2, 3, 5}[testutil::below(rng, 3)];
        Fp fp(p);
        size_t cols = 1 + testutil::below(rng, p == 2 ? 8 : 4);
        size_t rows = 1 + testutil::below(rng, 5);
        FpMatrix a(fp, rows, cols);
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < cols; ++c) a.at(r, c) = uint32_t(testutil::below(rng, p));
        std::vector<uint32_t> b(rows);
        for (auto& x : b) x = uint32_t(testutil::below(rng, p));

        uint64_t found = 0;
        uint64_t total = 1;
        for (size_t c = 0; c < cols; ++c) total *= p;
        std::vector<uint32_t> x(cols, 0);
        for (uint64_t v = 0; v < total; ++v) {
            uint64_t acc = v;
            for (size_t c = 0; c < cols; ++c) {
                x[c] = uint32_t(acc % p);
                acc /= p;
            }
            if (a.apply(x) == b) ++found;
        }

        AffineSolution s = solve_affine(a, b);
        if (!s.consistent) {
            CHECK(found == 0);
        } else {
            uint64_t expect = 1;
            for (size_t i = 0; i < s.nullity; ++i) expect *= p;
            CHECK(found == expect);
            CHECK(a.apply(s.particular) == b);
            CHECK(s.rank + s.nullity == cols);
        }
    }
}

TEST_SUITE_END();
