#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vdck/laurent.hpp"
#include "vdck/poly.hpp"

namespace vdck::testutil {

// Deterministic across standard libraries (no std::uniform_int_distribution).
inline uint64_t below(std::mt19937_64& rng, uint64_t n) {
    return n == 0 ? 0 : rng() % n;
}

inline Poly random_poly(std::mt19937_64& rng, const Fp& fp, int max_deg, bool nonzero = false) {
    while (true) {
        int deg = int(below(rng, uint64_t(max_deg) + 1));
        std::vector<uint32_t> c(size_t(deg) + 1);
        for (auto& x : c) x = uint32_t(below(rng, fp.modulus()));
        Poly p(fp, std::move(c));
        if (!nonzero || !p.is_zero()) return p;
    }
}

inline Poly random_monic_poly(std::mt19937_64& rng, const Fp& fp, int deg) {
    std::vector<uint32_t> c(size_t(deg) + 1);
    for (int i = 0; i < deg; ++i) c[size_t(i)] = uint32_t(below(rng, fp.modulus()));
    c[size_t(deg)] = 1;
    return Poly(fp, std::move(c));
}

// Random rational series num/den with deg num < deg den; den monic of the
// exact requested degree so the continued fraction has substance.
inline LaurentSeries random_rational_series(std::mt19937_64& rng, const Fp& fp, int den_deg,
                                            int horizon) {
    Poly den = random_monic_poly(rng, fp, den_deg);
    Poly num = random_poly(rng, fp, den_deg - 1, true);
    return from_rational(num, den, horizon);
}

} // namespace vdck::testutil
