#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hookrec/bigint.hpp"

namespace hookrec {

/// An integer partition: weakly decreasing positive parts. The empty
/// partition is the unique partition of 0.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<uint32_t> parts);

    const std::vector<uint32_t>& parts() const { return parts_; }
    uint32_t n() const { return n_; }
    bool empty() const { return parts_.empty(); }
    size_t rows() const { return parts_.size(); }
    uint32_t part(size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }

private:
    std::vector<uint32_t> parts_;
    uint32_t n_ = 0;
};

/// The (k,l) hook: at most k unconstrained rows, every later row of width <= l.
/// A partition lambda belongs to H(k,l;n) iff lambda_{k+1} <= l.
struct HookConstraint {
    uint32_t k = 0;
    uint32_t l = 0;

    bool contains(const Partition& p) const { return p.part(k) <= l; }
};

/// Visits every partition of n in H(k,l;n) exactly once, in reverse
/// lexicographic order on part lists.
void for_each_hook_partition(uint32_t n, HookConstraint c,
                             const std::function<void(const Partition&)>& visit);

/// Materialized form of for_each_hook_partition.
std::vector<Partition> enumerate_hook_partitions(uint32_t n, HookConstraint c);

/// Hook lengths cell by cell, row-major: entry (i,j) is
/// lambda_i - j + lambda'_j - i + 1 (1-indexed). All entries positive.
std::vector<std::vector<uint32_t>> hook_lengths(const Partition& p);

/// Number of standard Young tableaux via the hook-length formula,
/// f = n! / prod(hooks). The division is checked exact.
BigInt syt_count(const Partition& p);

/// Same count via the Young-Frobenius product formula over shifted parts.
BigInt syt_count_frobenius(const Partition& p);

/// Exhaustive count of row/column-increasing fillings. Test oracle;
/// rejects n > 10 with std::length_error.
BigInt syt_count_bruteforce(const Partition& p);

/// Transposed shape: conjugate(lambda)_j = #{i : lambda_i >= j}.
Partition conjugate(const Partition& p);

namespace detail {
/// Hook-formula count with the n! value supplied by the caller.
BigInt syt_count_with_factorial(const Partition& p, const BigInt& n_fact);
} // namespace detail

} // namespace hookrec
