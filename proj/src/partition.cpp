#include "hookrec/partition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hookrec {

Partition::Partition(std::vector<uint32_t> parts) : parts_(std::move(parts)) {
    uint64_t total = 0;
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] == 0)
            throw std::invalid_argument("Partition: parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("Partition: parts must be weakly decreasing");
        total += parts_[i];
    }
    if (total > UINT32_MAX)
        throw std::invalid_argument("Partition: cell count overflow");
    n_ = static_cast<uint32_t>(total);
}

namespace {

// Parts are chosen largest-first, so the emission order is reverse
// lexicographic. Rows at index >= k are capped at l.
void recurse(uint32_t remaining, uint32_t row, uint32_t prev, HookConstraint c,
             std::vector<uint32_t>& acc,
             const std::function<void(const Partition&)>& visit) {
    if (remaining == 0) {
        visit(Partition(acc));
        return;
    }
    uint32_t bound = std::min(remaining, prev);
    if (row >= c.k)
        bound = std::min(bound, c.l);
    for (uint32_t p = bound; p >= 1; --p) {
        acc.push_back(p);
        recurse(remaining - p, row + 1, p, c, acc, visit);
        acc.pop_back();
    }
}

} // namespace

void for_each_hook_partition(uint32_t n, HookConstraint c,
                             const std::function<void(const Partition&)>& visit) {
    std::vector<uint32_t> acc;
    acc.reserve(n);
    recurse(n, 0, n, c, acc, visit);
}

std::vector<Partition> enumerate_hook_partitions(uint32_t n, HookConstraint c) {
    std::vector<Partition> out;
    for_each_hook_partition(n, c, [&](const Partition& p) { out.push_back(p); });
    return out;
}

Partition conjugate(const Partition& p) {
    if (p.empty())
        return Partition();
    std::vector<uint32_t> cols(p.parts()[0]);
    for (uint32_t j = 0; j < p.parts()[0]; ++j) {
        uint32_t count = 0;
        for (uint32_t part : p.parts())
            if (part >= j + 1)
                ++count;
        cols[j] = count;
    }
    return Partition(std::move(cols));
}

std::vector<std::vector<uint32_t>> hook_lengths(const Partition& p) {
    const Partition conj = conjugate(p);
    std::vector<std::vector<uint32_t>> table(p.rows());
    for (size_t i = 0; i < p.rows(); ++i) {
        table[i].resize(p.parts()[i]);
        for (uint32_t j = 0; j < p.parts()[i]; ++j) {
            // arm + leg + 1, both measured away from cell (i, j)
            table[i][j] = (p.parts()[i] - (j + 1)) + (conj.parts()[j] - (i + 1)) + 1;
        }
    }
    return table;
}

namespace detail {

BigInt syt_count_with_factorial(const Partition& p, const BigInt& n_fact) {
    if (p.n() <= 1)
        return 1;
    const Partition conj = conjugate(p);
    BigInt hook_prod = 1;
    for (size_t i = 0; i < p.rows(); ++i)
        for (uint32_t j = 0; j < p.parts()[i]; ++j) {
            unsigned long h =
                (p.parts()[i] - (j + 1)) + (conj.parts()[j] - (i + 1)) + 1;
            hook_prod *= h;
        }
    return divide_exact(n_fact, hook_prod);
}

} // namespace detail

BigInt syt_count(const Partition& p) {
    return detail::syt_count_with_factorial(p, factorial(p.n()));
}

BigInt syt_count_frobenius(const Partition& p) {
    if (p.empty())
        return 1;
    const size_t m = p.rows();
    // shifted parts l_i = lambda_i + m - i (1-indexed), strictly decreasing
    std::vector<unsigned long> ell(m);
    for (size_t i = 0; i < m; ++i)
        ell[i] = p.parts()[i] + (m - 1 - i);
    BigInt num = factorial(p.n());
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            num *= ell[i] - ell[j];
    BigInt den = 1;
    for (size_t i = 0; i < m; ++i)
        den *= factorial(ell[i]);
    return divide_exact(num, den);
}

namespace {

BigInt count_fillings(const Partition& p, std::vector<uint32_t>& filled,
                      uint32_t placed) {
    if (placed == p.n())
        return 1;
    BigInt total = 0;
    for (size_t i = 0; i < p.rows(); ++i) {
        if (filled[i] == p.parts()[i])
            continue;
        // next free cell in row i is column filled[i]; legal iff the row
        // above already extends past that column
        if (i > 0 && filled[i - 1] <= filled[i])
            continue;
        ++filled[i];
        total += count_fillings(p, filled, placed + 1);
        --filled[i];
    }
    return total;
}

} // namespace

BigInt syt_count_bruteforce(const Partition& p) {
    if (p.n() > 10)
        throw std::length_error("syt_count_bruteforce: n > 10");
    if (p.empty())
        return 1;
    std::vector<uint32_t> filled(p.rows(), 0);
    return count_fillings(p, filled, 0);
}

} // namespace hookrec
