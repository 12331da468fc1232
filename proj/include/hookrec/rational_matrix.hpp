#pragma once

#include <cstddef>
#include <vector>

#include "hookrec/bigint.hpp"

namespace hookrec {

/// Dense matrix of exact rationals (each entry canonical: lowest terms,
/// positive denominator; the rational type maintains that itself).
class RationalMatrix {
public:
    RationalMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, BigRat(0)) {}

    static RationalMatrix identity(size_t n);
    static RationalMatrix from_int_rows(const std::vector<std::vector<BigInt>>& rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    BigRat& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
    const BigRat& at(size_t r, size_t c) const { return e_[r * cols_ + c]; }

private:
    size_t rows_, cols_;
    std::vector<BigRat> e_;
};

/// Row-pivot selection during elimination.
enum class PivotPolicy {
    SmallestBitSize, // damps coefficient blow-up; the default
    FirstNonzero,    // plain textbook choice; kept for cross-checking
};

/// Basis of {v : Mv = 0} via exact fraction-managed Gaussian elimination.
/// Each basis vector is scaled to integer entries, divided by its content,
/// and sign-fixed so its first nonzero entry is positive. Empty iff the
/// kernel is trivial.
std::vector<std::vector<BigInt>>
nullspace(const RationalMatrix& m, PivotPolicy policy = PivotPolicy::SmallestBitSize);

/// Exact rank; rank + kernel dimension = cols.
size_t rank(const RationalMatrix& m, PivotPolicy policy = PivotPolicy::SmallestBitSize);

} // namespace hookrec
