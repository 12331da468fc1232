#include "hookrec/rational_matrix.hpp"

#include <algorithm>
#include <limits>

namespace hookrec {

RationalMatrix RationalMatrix::identity(size_t n) {
    RationalMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_int_rows(
    const std::vector<std::vector<BigInt>>& rows) {
    const size_t r = rows.size();
    const size_t c = r ? rows[0].size() : 0;
    RationalMatrix m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            m.at(i, j) = BigRat(rows[i][j]);
    return m;
}

namespace {

size_t bit_size(const BigRat& x) {
    return mpz_sizeinbase(numerator(x).backend().data(), 2) +
           mpz_sizeinbase(denominator(x).backend().data(), 2);
}

struct Echelon {
    RationalMatrix m;
    std::vector<size_t> pivot_cols;
};

// Reduced row echelon form. Column order is fixed; the policy only picks
// which row supplies the pivot.
Echelon rref(RationalMatrix m, PivotPolicy policy) {
    const size_t R = m.rows(), C = m.cols();
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < C && row < R; ++col) {
        size_t best = R;
        size_t best_bits = std::numeric_limits<size_t>::max();
        for (size_t r = row; r < R; ++r) {
            if (m.at(r, col) == 0)
                continue;
            if (policy == PivotPolicy::FirstNonzero) {
                best = r;
                break;
            }
            const size_t bits = bit_size(m.at(r, col));
            if (bits < best_bits) {
                best_bits = bits;
                best = r;
            }
        }
        if (best == R)
            continue;
        if (best != row)
            for (size_t j = 0; j < C; ++j)
                std::swap(m.at(row, j), m.at(best, j));
        const BigRat inv_pivot = BigRat(1) / m.at(row, col);
        for (size_t j = col; j < C; ++j)
            m.at(row, j) *= inv_pivot;
        for (size_t r = 0; r < R; ++r) {
            if (r == row || m.at(r, col) == 0)
                continue;
            const BigRat factor = m.at(r, col);
            for (size_t j = col; j < C; ++j)
                m.at(r, j) -= factor * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

std::vector<BigInt> normalize_to_integers(const std::vector<BigRat>& v) {
    BigInt lcm_den = 1;
    for (const auto& x : v)
        lcm_den = lcm(lcm_den, denominator(x));
    std::vector<BigInt> w(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        w[i] = numerator(v[i]) * (lcm_den / denominator(v[i]));
    BigInt g = content(w);
    if (g > 1)
        for (auto& x : w)
            x /= g;
    for (const auto& x : w) {
        if (x == 0)
            continue;
        if (x < 0)
            for (auto& y : w)
                y = -y;
        break;
    }
    return w;
}

} // namespace

std::vector<std::vector<BigInt>> nullspace(const RationalMatrix& m,
                                           PivotPolicy policy) {
    const auto ech = rref(m, policy);
    const size_t C = m.cols();
    std::vector<bool> is_pivot(C, false);
    for (size_t c : ech.pivot_cols)
        is_pivot[c] = true;

    std::vector<std::vector<BigInt>> basis;
    for (size_t free_col = 0; free_col < C; ++free_col) {
        if (is_pivot[free_col])
            continue;
        std::vector<BigRat> v(C, BigRat(0));
        v[free_col] = 1;
        for (size_t pr = 0; pr < ech.pivot_cols.size(); ++pr)
            v[ech.pivot_cols[pr]] = -ech.m.at(pr, free_col);
        basis.push_back(normalize_to_integers(v));
    }
    return basis;
}

size_t rank(const RationalMatrix& m, PivotPolicy policy) {
    return rref(m, policy).pivot_cols.size();
}

} // namespace hookrec
