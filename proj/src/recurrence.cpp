#include "hookrec/recurrence.hpp"

#include <algorithm>
#include <limits>

#include "hookrec/rational_matrix.hpp"

namespace hookrec {

std::string RecurrenceOperator::str() const {
    std::string out;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        out += "(" + coeffs[i].str() + ")";
        if (i == 1)
            out += "*N";
        else if (i > 1)
            out += "*N^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

nlohmann::json RecurrenceOperator::to_json() const {
    nlohmann::json polys = nlohmann::json::array();
    for (const auto& p : coeffs) {
        nlohmann::json cs = nlohmann::json::array();
        if (p.is_zero())
            cs.push_back("0");
        for (const auto& c : p.coeffs())
            cs.push_back(c.str());
        polys.push_back(cs);
    }
    return {{"order", order()}, {"coeffs", polys}, {"valid_from", valid_from}};
}

RecurrenceOperator RecurrenceOperator::from_json(const nlohmann::json& j) {
    RecurrenceOperator op;
    for (const auto& cs : j.at("coeffs")) {
        std::vector<BigInt> c;
        for (const auto& s : cs)
            c.emplace_back(s.get<std::string>());
        op.coeffs.emplace_back(std::move(c));
    }
    op.valid_from = j.value("valid_from", int64_t{0});
    return op;
}

BigInt apply(const RecurrenceOperator& op, const SequenceRecord& seq, int64_t n) {
    BigInt acc = 0;
    for (int i = 0; i <= op.order(); ++i)
        acc += op.p(i).eval(BigInt(n)) * seq.at(n + i);
    return acc;
}

namespace {

RatPoly to_rat_poly(const IntPoly& p) {
    std::vector<BigRat> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs())
        c.emplace_back(x);
    return RatPoly(std::move(c));
}

RatPoly poly_rem(RatPoly a, const RatPoly& b) {
    while (!a.is_zero() && a.degree() >= b.degree()) {
        const BigRat f = a.leading() / b.leading();
        const int shift = a.degree() - b.degree();
        std::vector<BigRat> sub(static_cast<size_t>(shift), BigRat(0));
        sub.push_back(f);
        a = a - b * RatPoly(std::move(sub));
    }
    return a;
}

// Primitive integer form with positive leading coefficient.
IntPoly primitive_part(const RatPoly& p) {
    BigInt l = 1;
    for (const auto& c : p.coeffs())
        l = lcm(l, denominator(c));
    std::vector<BigInt> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs())
        v.push_back(numerator(c) * (l / denominator(c)));
    BigInt g = content(v);
    if (g == 0)
        return IntPoly();
    if (v.back() < 0)
        g = -g;
    for (auto& x : v)
        x /= g;
    return IntPoly(std::move(v));
}

IntPoly poly_gcd(IntPoly a, IntPoly b) {
    RatPoly x = to_rat_poly(a), y = to_rat_poly(b);
    if (x.degree() < y.degree())
        std::swap(x, y);
    while (!y.is_zero()) {
        RatPoly r = poly_rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return primitive_part(x);
}

// Exact quotient p / g over the integers (Gauss: both primitive-compatible).
IntPoly poly_exact_div(const IntPoly& p, const IntPoly& g) {
    RatPoly num = to_rat_poly(p);
    const RatPoly den = to_rat_poly(g);
    std::vector<BigRat> q(static_cast<size_t>(num.degree() - den.degree()) + 1,
                          BigRat(0));
    while (!num.is_zero() && num.degree() >= den.degree()) {
        const BigRat f = num.leading() / den.leading();
        const int shift = num.degree() - den.degree();
        q[static_cast<size_t>(shift)] = f;
        std::vector<BigRat> sub(static_cast<size_t>(shift), BigRat(0));
        sub.push_back(f);
        num = num - den * RatPoly(std::move(sub));
    }
    if (!num.is_zero())
        throw std::logic_error("poly_exact_div: inexact polynomial division");
    std::vector<BigInt> out;
    out.reserve(q.size());
    for (const auto& c : q) {
        if (denominator(c) != 1)
            throw std::logic_error("poly_exact_div: non-integer quotient");
        out.push_back(numerator(c));
    }
    return IntPoly(std::move(out));
}

} // namespace

RecurrenceOperator canonicalize(RecurrenceOperator op) {
    while (!op.coeffs.empty() && op.coeffs.back().is_zero())
        op.coeffs.pop_back();
    if (op.coeffs.empty())
        return op;
    // strip any common polynomial factor first (an operator is only
    // determined up to a rational-function multiple)
    if (op.order() >= 1) {
        IntPoly gp;
        for (const auto& p : op.coeffs)
            if (!p.is_zero())
                gp = gp.is_zero() ? p : poly_gcd(gp, p);
        if (gp.degree() >= 1)
            for (auto& p : op.coeffs)
                if (!p.is_zero())
                    p = poly_exact_div(p, gp);
    }
    BigInt g = 0;
    for (const auto& p : op.coeffs)
        for (const auto& c : p.coeffs())
            g = gcd(g, c);
    const bool flip = op.coeffs.back().leading() < 0;
    if (g > 1 || flip) {
        if (g == 0)
            g = 1;
        if (flip)
            g = -g;
        for (auto& p : op.coeffs) {
            std::vector<BigInt> c = p.coeffs();
            for (auto& x : c)
                x /= g;
            p = IntPoly(std::move(c));
        }
    }
    return op;
}

IntPoly characteristic_polynomial(const RecurrenceOperator& op) {
    int d = -1;
    for (const auto& p : op.coeffs)
        d = std::max(d, p.degree());
    std::vector<BigInt> c;
    c.reserve(op.coeffs.size());
    for (const auto& p : op.coeffs)
        c.push_back(p.coeff(static_cast<size_t>(d)));
    return IntPoly(std::move(c));
}

// --- fitting -----------------------------------------------------------

namespace {

// Prime for the modular rank prescreen. Rank can only drop mod p, so a
// trivial kernel mod p proves the exact kernel is trivial and the costly
// rational elimination can be skipped. Nontrivial prescreens are always
// confirmed exactly.
constexpr uint64_t kPrime = (uint64_t(1) << 61) - 1;

uint64_t mulmod(uint64_t a, uint64_t b) {
    return static_cast<uint64_t>((__uint128_t)a * b % kPrime);
}

size_t rank_mod_p(std::vector<std::vector<uint64_t>> m) {
    if (m.empty())
        return 0;
    const size_t R = m.size(), C = m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < C && row < R; ++col) {
        size_t piv = row;
        while (piv < R && m[piv][col] == 0)
            ++piv;
        if (piv == R)
            continue;
        std::swap(m[row], m[piv]);
        // Fermat inverse
        uint64_t inv = 1, base = m[row][col], e = kPrime - 2;
        while (e) {
            if (e & 1)
                inv = mulmod(inv, base);
            base = mulmod(base, base);
            e >>= 1;
        }
        for (size_t j = col; j < C; ++j)
            m[row][j] = mulmod(m[row][j], inv);
        for (size_t r = row + 1; r < R; ++r) {
            if (m[r][col] == 0)
                continue;
            const uint64_t f = m[r][col];
            for (size_t j = col; j < C; ++j) {
                uint64_t sub = mulmod(f, m[row][j]);
                m[r][j] = m[r][j] >= sub ? m[r][j] - sub : m[r][j] + kPrime - sub;
            }
        }
        ++row;
    }
    return row;
}

RecurrenceOperator operator_from_vector(const std::vector<BigInt>& v, int L, int D) {
    RecurrenceOperator op;
    for (int i = 0; i <= L; ++i) {
        std::vector<BigInt> c(v.begin() + i * (D + 1), v.begin() + (i + 1) * (D + 1));
        op.coeffs.emplace_back(std::move(c));
    }
    return op;
}

bool annihilates_window(const RecurrenceOperator& op, const SequenceRecord& seq,
                        int64_t from, int64_t last_index) {
    for (int64_t n = from; n + op.order() <= last_index; ++n)
        if (apply(op, seq, n) != 0)
            return false;
    return true;
}

int total_degree(const RecurrenceOperator& op) {
    int t = 0;
    for (const auto& p : op.coeffs)
        t += std::max(p.degree(), 0);
    return t;
}

size_t max_coeff_bits(const RecurrenceOperator& op) {
    size_t bits = 0;
    for (const auto& p : op.coeffs)
        for (const auto& c : p.coeffs())
            bits = std::max(bits, mpz_sizeinbase(c.backend().data(), 2));
    return bits;
}

// True iff p(n) = 0 for some integer n >= from. Real roots never exceed
// the Cauchy bound 1 + max|c_i|/|c_lead|, so a finite scan suffices.
bool leading_vanishes_from(const IntPoly& p, int64_t from) {
    if (p.degree() < 1)
        return false;
    const BigInt lead = abs(p.leading());
    BigInt top = 0;
    for (const auto& c : p.coeffs())
        top = std::max(top, BigInt(abs(c)));
    BigInt bound = top / lead + 2;
    const BigInt cap = BigInt(from) + 1000000;
    if (bound > cap)
        bound = cap; // absurd root bound: give up scanning, extension will
                     // surface any missed zero as a LeadingZeroError
    for (BigInt n = from; n <= bound; ++n)
        if (p.eval(n) == 0)
            return true;
    return false;
}

std::optional<RecurrenceOperator> fit_from(const SequenceRecord& seq, int64_t n0,
                                           int L_max, int D_max, int surplus) {
    const int64_t last = seq.last_index();
    const int64_t T = last - n0 + 1;
    for (int L = 1; L <= L_max; ++L) {
        const int64_t rows_avail = T - L;
        std::vector<uint64_t> term_mod;
        for (int D = 0; D <= D_max; ++D) {
            const int64_t unknowns = int64_t(L + 1) * (D + 1);
            if (rows_avail < unknowns + surplus)
                break; // larger D only needs more rows

            if (term_mod.empty()) {
                term_mod.reserve(static_cast<size_t>(T));
                for (int64_t n = n0; n <= last; ++n)
                    term_mod.push_back((seq.at(n) % kPrime).convert_to<uint64_t>());
            }
            std::vector<std::vector<uint64_t>> mp(static_cast<size_t>(rows_avail));
            for (int64_t r = 0; r < rows_avail; ++r) {
                auto& row = mp[static_cast<size_t>(r)];
                row.resize(static_cast<size_t>(unknowns));
                const uint64_t nmod = static_cast<uint64_t>(n0 + r) % kPrime;
                for (int i = 0; i <= L; ++i) {
                    uint64_t npow = 1;
                    const uint64_t a = term_mod[static_cast<size_t>(r + i)];
                    for (int d = 0; d <= D; ++d) {
                        row[static_cast<size_t>(i * (D + 1) + d)] = mulmod(npow, a);
                        npow = mulmod(npow, nmod);
                    }
                }
            }
            if (rank_mod_p(std::move(mp)) == static_cast<size_t>(unknowns))
                continue; // kernel provably trivial

            RationalMatrix m(static_cast<size_t>(rows_avail),
                             static_cast<size_t>(unknowns));
            for (int64_t r = 0; r < rows_avail; ++r) {
                const int64_t n = n0 + r;
                for (int i = 0; i <= L; ++i) {
                    BigInt npow = 1;
                    for (int d = 0; d <= D; ++d) {
                        m.at(static_cast<size_t>(r), static_cast<size_t>(i * (D + 1) + d)) =
                            BigRat(npow * seq.at(n + i));
                        npow *= n;
                    }
                }
            }
            std::optional<RecurrenceOperator> best;
            for (const auto& v : nullspace(m)) {
                RecurrenceOperator cand = canonicalize(operator_from_vector(v, L, D));
                if (cand.order() < 1)
                    continue;
                if (!annihilates_window(cand, seq, n0, last))
                    continue;
                // A vanishing leading coefficient at any n >= n0 means the
                // relation cannot determine the sequence forward from the
                // fit origin; such grid artifacts are skipped in favor of
                // the next (L, D) admitting a usable operator.
                if (leading_vanishes_from(cand.coeffs.back(), n0))
                    continue;
                if (!best)
                    best = cand;
                else {
                    auto key = [](const RecurrenceOperator& o) {
                        return std::tuple(o.order(), total_degree(o), max_coeff_bits(o));
                    };
                    if (key(cand) < key(*best))
                        best = cand;
                }
            }
            if (best) {
                best->valid_from = n0;
                return best;
            }
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<RecurrenceOperator> fit_recurrence(const SequenceRecord& seq, int L_max,
                                                 int D_max, int surplus) {
    if (static_cast<int64_t>(seq.terms.size()) - 1 < 2 + surplus)
        throw InsufficientTermsError(
            "fit_recurrence: too few terms even for the smallest system");
    if (auto op = fit_from(seq, seq.start, L_max, D_max, surplus))
        return op;
    // Offset sensitivity: an operator may only hold from index 1.
    return fit_from(seq, seq.start + 1, L_max, D_max, surplus);
}

// --- verification -------------------------------------------------------

VerifyReport verify(const RecurrenceOperator& op, const SequenceRecord& seq,
                    int64_t holdout) {
    VerifyReport rep;
    rep.first_checked = seq.start;
    rep.last_checked = seq.last_index() - op.order();
    if (rep.last_checked < rep.first_checked)
        return rep;
    std::optional<int64_t> last_failure;
    for (int64_t n = rep.first_checked; n <= rep.last_checked; ++n) {
        if (apply(op, seq, n) != 0) {
            last_failure = n;
            if (!rep.first_failure)
                rep.first_failure = n;
        }
    }
    rep.holds_everywhere = !last_failure.has_value();
    if (!last_failure)
        rep.valid_from = rep.first_checked;
    else if (*last_failure < rep.last_checked)
        rep.valid_from = *last_failure + 1;
    rep.pass = rep.valid_from &&
               rep.last_checked - *rep.valid_from + 1 >= holdout;
    return rep;
}

std::string VerifyReport::str() const {
    std::string s = "checked n = " + std::to_string(first_checked) + ".." +
                    std::to_string(last_checked) + ": ";
    if (holds_everywhere)
        s += "relation holds at every index";
    else if (valid_from)
        s += "relation holds from n = " + std::to_string(*valid_from) +
             " (first failure at n = " + std::to_string(*first_failure) + ")";
    else
        s += "relation fails through the last checkable index (first failure at n = " +
             std::to_string(first_failure.value_or(-1)) + ")";
    s += pass ? "; semi-rigorously verified" : "; NOT verified";
    return s;
}

} // namespace hookrec
