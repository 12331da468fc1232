#include "hookrec/sequence.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

#include "hookrec/recurrence.hpp"

namespace hookrec {

const BigInt& SequenceRecord::at(int64_t n) const {
    if (!has(n))
        throw std::out_of_range("SequenceRecord: no term at index " + std::to_string(n));
    return terms[static_cast<size_t>(n - start)];
}

BigInt compute_S(uint32_t k, uint32_t l, int z, uint32_t n) {
    if (z < 1)
        throw std::invalid_argument("compute_S: z must be a positive integer");
    const BigInt n_fact = factorial(n);
    BigInt total = 0;
    for_each_hook_partition(n, HookConstraint{k, l}, [&](const Partition& p) {
        BigInt f = detail::syt_count_with_factorial(p, n_fact);
        if (z == 1)
            total += f;
        else
            total += pow(f, static_cast<unsigned>(z));
    });
    return total;
}

SequenceRecord compute_series(uint32_t k, uint32_t l, int z, uint32_t n_max) {
    if (z < 1)
        throw std::invalid_argument("compute_series: z must be a positive integer");
    std::vector<BigInt> terms(n_max + 1);
    const unsigned workers =
        std::min<unsigned>(std::thread::hardware_concurrency(), n_max + 1);
    if (workers <= 1 || n_max < 16) {
        for (uint32_t n = 0; n <= n_max; ++n)
            terms[n] = compute_S(k, l, z, n);
    } else {
        // Each index is written by exactly one worker, so the result does
        // not depend on the schedule.
        std::atomic<uint32_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    uint32_t n = next.fetch_add(1);
                    if (n > n_max)
                        return;
                    terms[n] = compute_S(k, l, z, n);
                }
            });
        for (auto& t : pool)
            t.join();
    }
    SequenceRecord rec;
    rec.key = SequenceKey{k, l, z};
    rec.start = 0;
    rec.terms = std::move(terms);
    return rec;
}

SequenceRecord extend_via_recurrence(const SequenceRecord& seq,
                                     const RecurrenceOperator& op,
                                     int64_t n_target) {
    const int L = op.order();
    if (L < 1 || op.p(L).is_zero())
        throw std::invalid_argument("extend_via_recurrence: operator must have positive order");
    if (static_cast<int64_t>(seq.terms.size()) < L + 1)
        throw std::invalid_argument("extend_via_recurrence: need at least order+1 terms");

    SequenceRecord out = seq;
    while (out.last_index() < n_target) {
        const int64_t n = out.last_index() - L + 1; // relation index producing A(n+L)
        const BigInt lead = op.p(L).eval(BigInt(n));
        if (lead == 0)
            throw LeadingZeroError("extend_via_recurrence: p_L(" + std::to_string(n) +
                                   ") = 0");
        BigInt acc = 0;
        for (int i = 0; i < L; ++i)
            acc += op.p(i).eval(BigInt(n)) * out.at(n + i);
        BigInt q, r;
        boost::multiprecision::divide_qr(-acc, lead, q, r);
        if (r != 0)
            throw NonIntegralError(
                "extend_via_recurrence: inexact step at n = " + std::to_string(n) +
                "; the operator does not annihilate this sequence");
        out.terms.push_back(std::move(q));
    }
    return out;
}

} // namespace hookrec
