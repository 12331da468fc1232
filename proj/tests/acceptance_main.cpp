// Acceptance gate: one line per criterion, nonzero exit if any fails.
// argv[1] is the path to the hookrec CLI binary (used by criterion 7).
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "hookrec/asymptotics.hpp"
#include "hookrec/bigint.hpp"
#include "hookrec/paper_cases.hpp"
#include "hookrec/partition.hpp"
#include "hookrec/recurrence.hpp"
#include "hookrec/sequence.hpp"

using namespace hookrec;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename Body>
void criterion(int num, const char* name, Body&& body) {
    const auto t0 = Clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& ex) {
        note = std::string(" [") + ex.what() + "]";
    }
    std::printf("criterion %d (%s): %s (%.1fs)%s\n", num, name,
                ok ? "PASS" : "FAIL", seconds_since(t0), note.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

bool sequence_reproduction() {
    const auto t0 = Clock::now();
    for (const auto& pc : paper_cases()) {
        const auto s = compute_series(pc.key.k, pc.key.l, pc.key.z,
                                      static_cast<uint32_t>(pc.terms.size()));
        if (s.at(0) != 1)
            return false;
        for (size_t n = 1; n <= pc.terms.size(); ++n)
            if (s.at(static_cast<int64_t>(n)) != pc.terms[n - 1])
                return false;
    }
    return seconds_since(t0) < 10.0;
}

bool operator_reproduction() {
    const auto t0 = Clock::now();
    for (const auto& pc : paper_cases()) {
        const auto direct = compute_series(pc.key.k, pc.key.l, pc.key.z, 79);
        SequenceRecord head;
        head.start = 0;
        head.terms.assign(direct.terms.begin(), direct.terms.begin() + 60);
        const auto fitted = fit_recurrence(head);
        if (!fitted || !(*fitted == pc.op))
            return false;
        const auto vr = verify(*fitted, direct, 20);
        if (!vr.pass || !vr.holds_everywhere)
            return false;
    }
    return seconds_since(t0) < 60.0;
}

bool asymptotics_reproduction() {
    for (const auto& pc : paper_cases()) {
        const auto e = expansion(pc.op, 3);
        if (e.mu != pc.mu || e.theta != pc.theta)
            return false;
        if (!pc.a3.empty()) {
            if (e.a.size() != 3)
                return false;
            for (size_t j = 0; j < 3; ++j)
                if (e.a[j] != pc.a3[j])
                    return false;
        }
    }
    return true;
}

bool constant_recovery() {
    for (const auto& pc : paper_cases()) {
        const auto direct = compute_series(pc.key.k, pc.key.l, pc.key.z, 60);
        const auto ext = extend_via_recurrence(direct, pc.op, 301);
        const auto e10 = expansion(pc.op, 10);
        const auto est = estimate_constant(ext, e10, 300, 256);
        std::string diag;
        const auto matched = match_constant(est, 200, &diag);
        if (!matched || !(*matched == pc.constant))
            return false;
        FloatPrecisionGuard guard(256);
        const BigFloat closed = pc.constant.value();
        if (abs(est.value - closed) > BigFloat("1e-6") * closed)
            return false;
    }
    return true;
}

bool oracle_suite() {
    // three independent tableau counters agree on every shape up to n = 10
    for (uint32_t n = 0; n <= 10; ++n)
        for (const auto& p : enumerate_hook_partitions(n, {n, n})) {
            const BigInt f = syt_count(p);
            if (f != syt_count_frobenius(p) || f != syt_count_bruteforce(p))
                return false;
        }
    // below (k+1)(l+1) cells the hook admits every partition, so for z = 2
    // the sum telescopes to n! by row insertion
    for (uint32_t k = 1; k <= 2; ++k)
        for (uint32_t l = 1; l <= 2; ++l)
            for (uint32_t n = 0; n < (k + 1) * (l + 1); ++n)
                if (compute_S(k, l, 2, n) != factorial(n))
                    return false;
    if (compute_S(2, 2, 2, 8) != BigInt(40320))
        return false;
    // conjugation swaps the roles of k and l
    for (uint32_t k = 1; k <= 3; ++k)
        for (uint32_t l = 1; l <= 3; ++l)
            for (uint32_t n = 1; n <= 25; ++n)
                if (compute_S(k, l, 2, n) != compute_S(l, k, 2, n))
                    return false;
    return true;
}

bool known_sequences() {
    SequenceRecord fib;
    fib.start = 0;
    BigInt a = 1, b = 1;
    for (int i = 0; i < 30; ++i) {
        fib.terms.push_back(a);
        const BigInt c = a + b;
        a = b;
        b = c;
    }
    const auto fib_op = fit_recurrence(fib);
    const RecurrenceOperator expect_fib{
        {IntPoly({-1}), IntPoly({-1}), IntPoly({1})}, 0};
    if (!fib_op || !(*fib_op == expect_fib) || !verify(*fib_op, fib).pass)
        return false;

    SequenceRecord fact;
    fact.start = 0;
    for (unsigned long n = 0; n < 25; ++n)
        fact.terms.push_back(factorial(n));
    const auto fact_op = fit_recurrence(fact);
    const RecurrenceOperator expect_fact{
        {IntPoly({-1, -1}), IntPoly({1})}, 0};
    return fact_op && *fact_op == expect_fact && verify(*fact_op, fact).pass;
}

} // namespace

int main(int argc, char** argv) {
    criterion(1, "sequence reproduction", sequence_reproduction);
    criterion(2, "operator reproduction", operator_reproduction);
    criterion(3, "asymptotics reproduction", asymptotics_reproduction);
    criterion(4, "constant recovery", constant_recovery);
    criterion(5, "oracle suite", oracle_suite);
    criterion(6, "known sequences", known_sequences);
    criterion(7, "end-to-end reproduction", [&]() {
        if (argc < 2)
            throw std::runtime_error("CLI path not passed as argv[1]");
        const auto t0 = Clock::now();
        const std::string cmd = std::string(argv[1]) + " paper > /dev/null";
        const int rc = std::system(cmd.c_str());
        const bool clean_exit = WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
        return clean_exit && seconds_since(t0) < 120.0;
    });
    return failures == 0 ? 0 : 1;
}
