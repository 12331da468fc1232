#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "hookrec/bigint.hpp"
#include "hookrec/rational_matrix.hpp"

using namespace hookrec;

namespace {

bool in_kernel(const RationalMatrix& m, const std::vector<BigInt>& v) {
    for (size_t r = 0; r < m.rows(); ++r) {
        BigRat acc = 0;
        for (size_t c = 0; c < m.cols(); ++c)
            acc += m.at(r, c) * BigRat(v[c]);
        if (acc != 0)
            return false;
    }
    return true;
}

bool normalized(const std::vector<BigInt>& v) {
    std::vector<BigInt> entries(v.begin(), v.end());
    if (content(entries) != 1)
        return false;
    for (const auto& x : v) {
        if (x == 0)
            continue;
        return x > 0;
    }
    return false; // all-zero vector never belongs in a basis
}

} // namespace

TEST_CASE("identity has trivial kernel and full rank") {
    const auto id = RationalMatrix::identity(5);
    CHECK(nullspace(id).empty());
    CHECK(rank(id) == 5);
}

TEST_CASE("rank-one 2x2") {
    const auto m = RationalMatrix::from_int_rows({{BigInt(1), BigInt(2)},
                                                  {BigInt(2), BigInt(4)}});
    CHECK(rank(m) == 1);
    const auto ker = nullspace(m);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0] == std::vector<BigInt>{BigInt(2), BigInt(-1)});
}

TEST_CASE("wide system yields a two-dimensional kernel") {
    const auto m = RationalMatrix::from_int_rows({{BigInt(1), BigInt(1), BigInt(1)}});
    const auto ker = nullspace(m);
    REQUIRE(ker.size() == 2);
    for (const auto& v : ker) {
        CHECK(in_kernel(m, v));
        CHECK(normalized(v));
    }
}

TEST_CASE("kernel vectors are integral, content-free and sign-fixed") {
    RationalMatrix m(2, 4);
    // rows with denominators to force fraction clearing
    const BigRat vals[2][4] = {{BigRat(1, 2), BigRat(1, 3), BigRat(1, 6), BigRat(0)},
                               {BigRat(2, 5), BigRat(0), BigRat(1, 5), BigRat(7)}};
    for (size_t r = 0; r < 2; ++r)
        for (size_t c = 0; c < 4; ++c)
            m.at(r, c) = vals[r][c];
    const auto ker = nullspace(m);
    REQUIRE(ker.size() == 2);
    for (const auto& v : ker) {
        CHECK(in_kernel(m, v));
        CHECK(normalized(v));
    }
    CHECK(rank(m) == 2);
}

TEST_CASE("hilbert-style matrix keeps full rank exactly") {
    // float elimination loses this one quickly; exact arithmetic must not
    RationalMatrix m(6, 6);
    for (size_t r = 0; r < 6; ++r)
        for (size_t c = 0; c < 6; ++c)
            m.at(r, c) = BigRat(1, static_cast<long>(r + c + 1));
    CHECK(rank(m) == 6);
    CHECK(nullspace(m).empty());
}

TEST_CASE("pivot policies agree on rank and kernel membership") {
    const auto m = RationalMatrix::from_int_rows({
        {BigInt("123456789123456789"), BigInt(2), BigInt(3), BigInt(1)},
        {BigInt(4), BigInt("987654321987654321"), BigInt(6), BigInt(2)},
        {BigInt("123456789123456793"), BigInt("987654321987654323"), BigInt(9),
         BigInt(3)},
    });
    CHECK(rank(m, PivotPolicy::SmallestBitSize) == rank(m, PivotPolicy::FirstNonzero));
    const auto ka = nullspace(m, PivotPolicy::SmallestBitSize);
    const auto kb = nullspace(m, PivotPolicy::FirstNonzero);
    CHECK(ka.size() == kb.size());
    for (const auto& v : ka)
        CHECK(in_kernel(m, v));
    for (const auto& v : kb)
        CHECK(in_kernel(m, v));
}

TEST_CASE("rank plus kernel dimension equals the column count") {
    const auto m = RationalMatrix::from_int_rows({
        {BigInt(1), BigInt(2), BigInt(3), BigInt(4), BigInt(5)},
        {BigInt(2), BigInt(4), BigInt(6), BigInt(8), BigInt(10)},
        {BigInt(1), BigInt(0), BigInt(1), BigInt(0), BigInt(1)},
        {BigInt(3), BigInt(6), BigInt(10), BigInt(12), BigInt(16)},
    });
    const size_t r = rank(m);
    const auto ker = nullspace(m);
    CHECK(r + ker.size() == 5);
    for (const auto& v : ker) {
        CHECK(in_kernel(m, v));
        CHECK(normalized(v));
    }
}
