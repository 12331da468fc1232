#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "hookrec/bigint.hpp"
#include "hookrec/partition.hpp"
#include "hookrec/polynomial.hpp"
#include "hookrec/recurrence.hpp"
#include "hookrec/sequence.hpp"

using namespace hookrec;

namespace {

BigInt brute_S(uint32_t k, uint32_t l, int z, uint32_t n) {
    BigInt sum = 0;
    for (const auto& p : enumerate_hook_partitions(n, {k, l})) {
        BigInt f = syt_count(p);
        BigInt term = 1;
        for (int i = 0; i < z; ++i)
            term *= f;
        sum += term;
    }
    return sum;
}

SequenceRecord record(std::vector<BigInt> terms, int64_t start = 0) {
    SequenceRecord r;
    r.start = start;
    r.terms = std::move(terms);
    return r;
}

RecurrenceOperator op_from(std::vector<std::vector<BigInt>> polys) {
    RecurrenceOperator op;
    for (auto& c : polys)
        op.coeffs.emplace_back(std::move(c));
    return op;
}

} // namespace

TEST_CASE("compute_S rejects z < 1") {
    CHECK_THROWS_AS(compute_S(2, 1, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(compute_S(2, 1, -1, 3), std::invalid_argument);
}

TEST_CASE("S(0) is 1 by convention") {
    CHECK(compute_S(2, 1, 1, 0) == 1);
    CHECK(compute_S(0, 0, 3, 0) == 1);
}

TEST_CASE("degenerate hooks") {
    // (0,0): nothing fits for n >= 1
    CHECK(compute_S(0, 0, 1, 4) == 0);
    // (0,1): only the single column
    for (uint32_t n = 1; n <= 6; ++n)
        CHECK(compute_S(0, 1, 4, n) == 1);
    // (1,0): only the single row
    for (uint32_t n = 1; n <= 6; ++n)
        CHECK(compute_S(1, 0, 2, n) == 1);
}

TEST_CASE("(1,1) hooks sum to a power of two") {
    // shapes (a, 1^b): f = binom(n-1, b), so S = 2^(n-1)
    for (uint32_t n = 1; n <= 16; ++n)
        CHECK(compute_S(1, 1, 1, n) == BigInt(1) << (n - 1));
}

TEST_CASE("compute_S matches independent enumeration") {
    for (uint32_t n = 0; n <= 9; ++n)
        for (uint32_t k = 1; k <= 2; ++k)
            for (int z = 1; z <= 2; ++z)
                CHECK(compute_S(k, 2, z, n) == brute_S(k, 2, z, n));
}

TEST_CASE("below the excluded rectangle the constraint is invisible") {
    // the smallest non-member of H(k,l) has (k+1)(l+1) cells, so for
    // n < (k+1)(l+1) the hook sum runs over all partitions; at z = 2 that
    // sum is n! by Robinson-Schensted
    for (uint32_t n = 0; n < 9; ++n)
        CHECK(compute_S(2, 2, 2, n) == factorial(n));
    CHECK(compute_S(2, 2, 2, 8) == 40320);
    for (uint32_t n = 0; n < 6; ++n)
        CHECK(compute_S(1, 2, 2, n) == factorial(n));
}

TEST_CASE("transpose symmetry") {
    for (uint32_t n = 0; n <= 12; ++n)
        for (uint32_t k = 0; k <= 3; ++k)
            for (uint32_t l = 0; l <= 3; ++l)
                CHECK(compute_S(k, l, 2, n) == compute_S(l, k, 2, n));
}

TEST_CASE("compute_series agrees with compute_S termwise") {
    const SequenceRecord s = compute_series(2, 1, 2, 24);
    REQUIRE(s.terms.size() == 25);
    CHECK(s.start == 0);
    REQUIRE(s.key.has_value());
    CHECK(s.key->k == 2);
    CHECK(s.key->l == 1);
    CHECK(s.key->z == 2);
    for (uint32_t n = 0; n <= 24; ++n)
        CHECK(s.at(n) == compute_S(2, 1, 2, n));
}

TEST_CASE("series access bounds") {
    const SequenceRecord s = record({BigInt(1), BigInt(2), BigInt(3)}, 5);
    CHECK(s.has(5));
    CHECK(s.has(7));
    CHECK(!s.has(4));
    CHECK(!s.has(8));
    CHECK(s.last_index() == 7);
    CHECK(s.at(6) == 2);
    CHECK_THROWS_AS(s.at(8), std::out_of_range);
}

TEST_CASE("extension by a recurrence reproduces a geometric tail") {
    // A(n+1) = 2 A(n), i.e. -2 + N
    const auto op = op_from({{BigInt(-2)}, {BigInt(1)}});
    SequenceRecord s = record({BigInt(1), BigInt(2)});
    s = extend_via_recurrence(s, op, 10);
    REQUIRE(s.last_index() == 10);
    for (int64_t n = 0; n <= 10; ++n)
        CHECK(s.at(n) == BigInt(1) << static_cast<unsigned>(n));
    // idempotent when the target is already present
    const SequenceRecord again = extend_via_recurrence(s, op, 8);
    CHECK(again.terms == s.terms);
}

TEST_CASE("extension failures are typed") {
    const auto geometric = op_from({{BigInt(-2)}, {BigInt(1)}});
    CHECK_THROWS_AS(extend_via_recurrence(record({BigInt(1)}), geometric, 5),
                    std::invalid_argument); // needs order+1 terms

    // (n-3) A(n+1) = 2(n-3) A(n): the leading coefficient vanishes exactly
    // at the first window the extension needs
    const auto singular = op_from({{BigInt(6), BigInt(-2)}, {BigInt(-3), BigInt(1)}});
    SequenceRecord s = record({BigInt(1), BigInt(2), BigInt(4), BigInt(8)});
    CHECK_THROWS_AS(extend_via_recurrence(s, singular, 9), LeadingZeroError);

    // 3 A(n+1) = 2 A(n) forces non-integer values
    const auto thirds = op_from({{BigInt(-2)}, {BigInt(3)}});
    CHECK_THROWS_AS(extend_via_recurrence(record({BigInt(1), BigInt(1)}), thirds, 4),
                    NonIntegralError);

    RecurrenceOperator empty;
    CHECK_THROWS_AS(extend_via_recurrence(record({BigInt(1), BigInt(1)}), empty, 4),
                    std::invalid_argument);
}

TEST_CASE("series are schedule independent") {
    // compute_series parallelizes internally; rerunning must be bit-identical
    const SequenceRecord a = compute_series(2, 2, 2, 40);
    const SequenceRecord b = compute_series(2, 2, 2, 40);
    CHECK(a.terms == b.terms);
}
