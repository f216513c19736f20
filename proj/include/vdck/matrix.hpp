#pragma once

#include <cstdint>
#include <vector>

#include "vdck/fp.hpp"

namespace vdck {

// Dense row-major matrix over F_p.
class FpMatrix {
public:
    FpMatrix(const Fp& fp, size_t rows, size_t cols)
        : fp_(fp), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static FpMatrix identity(const Fp& fp, size_t n) {
        FpMatrix m(fp, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    const Fp& field() const { return fp_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint32_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    const std::vector<uint32_t>& entries() const { return a_; }

    // y = M * x (mod p)
    std::vector<uint32_t> apply(const std::vector<uint32_t>& x) const;

    friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
        return a.fp_ == b.fp_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    Fp fp_;
    size_t rows_, cols_;
    std::vector<uint32_t> a_;
};

size_t mat_rank(FpMatrix m);

// Solution set of A x = b. When consistent, the set has exactly p^nullity
// elements; `particular` is the witness with all free variables set to 0,
// which is reproducible because pivoting is deterministic (first nonzero
// entry in column order).
struct AffineSolution {
    bool consistent = false;
    std::vector<uint32_t> particular;
    size_t rank = 0;
    size_t nullity = 0;
};

AffineSolution solve_affine(const FpMatrix& a, const std::vector<uint32_t>& b);

} // namespace vdck
