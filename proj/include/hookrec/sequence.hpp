#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hookrec/bigint.hpp"
#include "hookrec/partition.hpp"

namespace hookrec {

struct RecurrenceOperator;

/// Identifies one S-sequence: sum over H(k,l;n) of (f^lambda)^z.
struct SequenceKey {
    uint32_t k = 0;
    uint32_t l = 0;
    int z = 1;

    bool operator==(const SequenceKey&) const = default;
};

/// Exact terms of a sequence at consecutive indices starting at `start`.
/// Records produced by compute_series carry their key; synthetic sequences
/// (test inputs, generic fits) leave it empty.
struct SequenceRecord {
    std::optional<SequenceKey> key;
    int64_t start = 0;
    std::vector<BigInt> terms;

    bool has(int64_t n) const {
        return n >= start && n < start + static_cast<int64_t>(terms.size());
    }
    const BigInt& at(int64_t n) const;
    int64_t last_index() const { return start + static_cast<int64_t>(terms.size()) - 1; }
};

/// S_{k,l}^{(z)}(n) by direct enumeration over H(k,l;n). z must be >= 1.
BigInt compute_S(uint32_t k, uint32_t l, int z, uint32_t n);

/// Terms n = 0..n_max. Parallelizes over n internally; the result is
/// schedule-independent.
SequenceRecord compute_series(uint32_t k, uint32_t l, int z, uint32_t n_max);

/// Base class for recurrence-extension failures.
struct RecurrenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Leading coefficient p_L(n) vanished at an index the extension needed.
struct LeadingZeroError : RecurrenceError {
    using RecurrenceError::RecurrenceError;
};
/// A recurrence step did not divide exactly; the operator does not
/// annihilate the sequence.
struct NonIntegralError : RecurrenceError {
    using RecurrenceError::RecurrenceError;
};

/// Extends seq to index n_target using
///   A(n+L) = -(sum_{i<L} p_i(n) A(n+i)) / p_L(n),
/// checking every division is exact. Requires at least order+1 known terms.
SequenceRecord extend_via_recurrence(const SequenceRecord& seq,
                                     const RecurrenceOperator& op,
                                     int64_t n_target);

} // namespace hookrec
