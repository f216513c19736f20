#include "vdck/matrix.hpp"

#include "vdck/errors.hpp"

namespace vdck {

std::vector<uint32_t> FpMatrix::apply(const std::vector<uint32_t>& x) const {
    if (x.size() != cols_) throw ConfigError("matrix-vector size mismatch");
    std::vector<uint32_t> y(rows_, 0);
    const uint32_t p = fp_.modulus();
    for (size_t r = 0; r < rows_; ++r) {
        uint64_t acc = 0;
        const uint32_t* row = a_.data() + r * cols_;
        for (size_t c = 0; c < cols_; ++c) {
            acc += uint64_t(row[c]) * x[c];
            // (p-1)^2 < 2^32; fold before uint64 could wrap on huge widths
            if ((c & 0xffff) == 0xffff) acc %= p;
        }
        y[r] = uint32_t(acc % p);
    }
    return y;
}

namespace {

// In-place Gauss-Jordan over F_p with first-nonzero-in-column-order pivoting.
// Returns pivot columns; `ncols_eliminate` allows an augmented column to ride
// along without being eliminated.
std::vector<size_t> gauss_jordan(FpMatrix& m, size_t ncols_eliminate) {
    const Fp& fp = m.field();
    std::vector<size_t> pivot_cols;
    size_t r = 0;
    for (size_t c = 0; c < ncols_eliminate && r < m.rows(); ++c) {
        size_t pivot = r;
        while (pivot < m.rows() && m.at(pivot, c) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != r)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(r, j));
        uint32_t inv = fp.inv(m.at(r, c));
        for (size_t j = c; j < m.cols(); ++j) m.at(r, j) = fp.mul(m.at(r, j), inv);
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            uint32_t f = m.at(i, c);
            for (size_t j = c; j < m.cols(); ++j)
                m.at(i, j) = fp.sub(m.at(i, j), fp.mul(f, m.at(r, j)));
        }
        pivot_cols.push_back(c);
        ++r;
    }
    return pivot_cols;
}

} // namespace

size_t mat_rank(FpMatrix m) {
    return gauss_jordan(m, m.cols()).size();
}

AffineSolution solve_affine(const FpMatrix& a, const std::vector<uint32_t>& b) {
    if (b.size() != a.rows()) throw ConfigError("solve_affine: rhs length mismatch");
    FpMatrix aug(a.field(), a.rows(), a.cols() + 1);
    for (size_t r = 0; r < a.rows(); ++r) {
        for (size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r] % a.field().modulus();
    }
    std::vector<size_t> pivots = gauss_jordan(aug, a.cols());

    AffineSolution sol;
    sol.rank = pivots.size();
    for (size_t r = pivots.size(); r < a.rows(); ++r)
        if (aug.at(r, a.cols()) != 0) return sol; // inconsistent

    sol.consistent = true;
    sol.nullity = a.cols() - sol.rank;
    sol.particular.assign(a.cols(), 0);
    for (size_t i = 0; i < pivots.size(); ++i)
        sol.particular[pivots[i]] = aug.at(i, a.cols());
    return sol;
}

} // namespace vdck
