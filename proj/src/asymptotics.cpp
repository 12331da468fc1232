#include "hookrec/asymptotics.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace hookrec {

namespace {

// --- exact rational root machinery --------------------------------------

// Trial-division factorization. Past the cap the cofactor is kept whole;
// divisors built from it may miss some rational root candidates, but any
// root that slips through stays in the deflated factor and fails the
// dominance bound, so the outcome is an honest unsupported-case error.
std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n) {
    std::vector<std::pair<BigInt, unsigned>> fs;
    if (n < 0)
        n = -n;
    constexpr unsigned long cap = 10'000'000UL;
    for (unsigned long p = 2; BigInt(p) * p <= n && p <= cap; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            fs.emplace_back(p, e);
    }
    if (n > 1)
        fs.emplace_back(n, 1);
    return fs;
}

std::vector<BigInt> divisors(const BigInt& n) {
    std::vector<BigInt> ds{1};
    for (const auto& [p, e] : factorize(n)) {
        const size_t sz = ds.size();
        BigInt pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j)
                ds.push_back(ds[j] * pk);
        }
    }
    return ds;
}

RatPoly to_rat(const IntPoly& p) {
    std::vector<BigRat> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs())
        c.emplace_back(x);
    return RatPoly(std::move(c));
}

// Divides p by (x - r); remainder must vanish.
RatPoly deflate(const RatPoly& p, const BigRat& r) {
    const auto& c = p.coeffs();
    std::vector<BigRat> q(c.size() - 1);
    BigRat carry = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) {
        if (i < q.size())
            q[i] = carry;
        carry = c[i] + carry * r;
    }
    if (carry != 0)
        throw std::logic_error("deflate: nonzero remainder");
    return RatPoly(std::move(q));
}

IntPoly clear_denominators(const RatPoly& p) {
    BigInt l = 1;
    for (const auto& c : p.coeffs())
        l = lcm(l, denominator(c));
    std::vector<BigInt> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs())
        out.push_back(numerator(c) * (l / denominator(c)));
    return IntPoly(std::move(out));
}

// One Graeffe root-squaring step: roots of the result are the squares of
// the roots of g.
IntPoly graeffe(const IntPoly& g) {
    const int d = g.degree();
    std::vector<BigInt> even((d / 2) + 1, BigInt(0)), odd((d + 1) / 2, BigInt(0));
    for (int i = 0; i <= d; ++i)
        (i % 2 ? odd[i / 2] : even[i / 2]) = g.coeff(i);
    IntPoly e{std::vector<BigInt>(even)}, o{std::vector<BigInt>(odd)};
    IntPoly h = e * e - IntPoly({BigInt(0), BigInt(1)}) * o * o;
    if (!h.is_zero() && h.leading() < 0)
        h = -h;
    return h;
}

// Exact proof that every root of g has modulus < rho, via the Cauchy bound
// tightened by root-squaring.
bool roots_strictly_below(IntPoly g, const BigRat& rho) {
    if (g.degree() <= 0)
        return true;
    BigRat target = rho;
    for (int iter = 0; iter <= 14; ++iter) {
        BigRat bound = 0;
        const BigInt& lead = g.leading();
        for (int i = 0; i < g.degree(); ++i) {
            BigRat ratio = abs(BigRat(g.coeff(i), lead));
            bound = std::max(bound, ratio);
        }
        bound += 1;
        if (bound < target)
            return true;
        g = graeffe(g);
        target *= target;
    }
    return false;
}

struct RationalRoots {
    std::vector<std::pair<BigRat, unsigned>> roots; // with multiplicities
    RatPoly residual;                               // rational-root-free factor
};

RationalRoots find_rational_roots(const IntPoly& cp) {
    RationalRoots out;
    RatPoly work = to_rat(cp);
    // strip x^v: zero roots
    {
        unsigned v = 0;
        while (work.degree() >= 1 && work.coeff(0) == 0) {
            work = deflate(work, BigRat(0));
            ++v;
        }
        if (v)
            out.roots.emplace_back(BigRat(0), v);
    }
    if (work.degree() >= 1) {
        const IntPoly prim = clear_denominators(work);
        const auto ps = divisors(prim.coeff(0));
        const auto qs = divisors(prim.leading());
        std::vector<BigRat> candidates;
        for (const auto& p : ps)
            for (const auto& q : qs) {
                BigRat r(p, q);
                candidates.push_back(r);
                candidates.push_back(-r);
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()),
                         candidates.end());
        for (const auto& r : candidates) {
            unsigned mult = 0;
            while (work.degree() >= 1 && work.eval(r) == 0) {
                work = deflate(work, r);
                ++mult;
            }
            if (mult)
                out.roots.emplace_back(r, mult);
        }
    }
    out.residual = work;
    return out;
}

} // namespace

BigRat dominant_root(const IntPoly& cp) {
    if (cp.degree() < 1)
        throw std::invalid_argument("dominant_root: polynomial must be nonconstant");
    const RationalRoots rr = find_rational_roots(cp);
    const IntPoly residual = clear_denominators(rr.residual);

    if (rr.roots.empty())
        throw UnsupportedAsymptoticsError(
            "dominant root is not rational; unfactored part: " + residual.str("u"));

    BigRat rho = 0;
    for (const auto& [r, m] : rr.roots)
        rho = std::max(rho, BigRat(abs(r)));

    std::vector<std::pair<BigRat, unsigned>> top;
    for (const auto& [r, m] : rr.roots)
        if (abs(r) == rho)
            top.emplace_back(r, m);

    const BigRat* chosen = nullptr;
    unsigned mult = 0;
    if (top.size() == 1) {
        chosen = &top[0].first;
        mult = top[0].second;
    } else {
        // +mu / -mu tie: take the positive root (positive-term sequences
        // grow along the positive axis).
        for (const auto& [r, m] : top)
            if (r > 0) {
                chosen = &r;
                mult = m;
            }
        if (!chosen)
            throw UnsupportedAsymptoticsError(
                "largest-modulus rational roots tied in modulus with no positive "
                "representative");
    }
    if (mult != 1)
        throw UnsupportedAsymptoticsError("dominant root " + rational_to_string(*chosen) +
                                          " is repeated (multiplicity " +
                                          std::to_string(mult) + ")");
    if (!roots_strictly_below(residual, rho))
        throw UnsupportedAsymptoticsError(
            "cannot bound the non-rational factor strictly below the dominant root; "
            "unfactored part: " +
            residual.str("u"));
    return *chosen;
}

// --- order-by-order expansion -------------------------------------------

namespace {

// Truncated power series in x = 1/n, coefficients exact rationals.
using Series = std::vector<BigRat>;

Series mul(const Series& a, const Series& b, size_t len) {
    Series r(len, BigRat(0));
    for (size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0)
            continue;
        for (size_t j = 0; j + i < len && j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

// (1 + i*x)^alpha as a truncated binomial series.
Series binomial_series(const BigRat& alpha, int64_t i, size_t len) {
    Series s(len, BigRat(0));
    s[0] = 1;
    BigRat binom = 1;
    BigInt ipow = 1;
    for (size_t m = 1; m < len; ++m) {
        binom *= (alpha - BigRat(static_cast<long>(m) - 1)) / BigRat(static_cast<long>(m));
        ipow *= i;
        s[m] = binom * BigRat(ipow);
    }
    return s;
}

} // namespace

AsymptoticExpansion expansion(const RecurrenceOperator& op, unsigned J) {
    const IntPoly cp = characteristic_polynomial(op);
    const BigRat mu = dominant_root(cp);
    const int L = op.order();
    int d = 0;
    for (const auto& p : op.coeffs)
        d = std::max(d, p.degree());

    // mu powers and the two leading coefficient layers
    std::vector<BigRat> mupow(static_cast<size_t>(L) + 1);
    mupow[0] = 1;
    for (int i = 1; i <= L; ++i)
        mupow[i] = mupow[i - 1] * mu;

    BigRat s1 = 0, pivot = 0;
    for (int i = 0; i <= L; ++i) {
        if (d >= 1)
            s1 += mupow[i] * BigRat(op.p(i).coeff(static_cast<size_t>(d - 1)));
        pivot += mupow[i] * BigRat(op.p(i).coeff(static_cast<size_t>(d))) * i;
    }
    if (pivot == 0)
        throw DegeneratePivotError("expansion: vanishing pivot in the theta equation");
    const BigRat theta = -s1 / pivot;

    const size_t len = J + 2; // orders x^0 .. x^(J+1)

    // p_i(n) = n^d * phat_i(x) with phat_i(x) = sum_m c_{i,m} x^(d-m)
    std::vector<Series> phat(static_cast<size_t>(L) + 1, Series(len, BigRat(0)));
    for (int i = 0; i <= L; ++i)
        for (int m = 0; m <= d; ++m)
            if (static_cast<size_t>(d - m) < len)
                phat[i][static_cast<size_t>(d - m)] = BigRat(op.p(i).coeff(static_cast<size_t>(m)));

    // base series and the correction channels
    Series s0(len, BigRat(0));
    std::vector<Series> chan(J + 1, Series(len, BigRat(0)));
    for (int i = 0; i <= L; ++i) {
        Series base = mul(phat[i], binomial_series(theta, i, len), len);
        for (size_t t = 0; t < len; ++t)
            s0[t] += mupow[i] * base[t];
        for (unsigned j = 1; j <= J; ++j) {
            Series cj = mul(phat[i], binomial_series(theta - BigRat(j), i, len), len);
            for (size_t t = j; t < len; ++t)
                chan[j][t] += mupow[i] * cj[t - j]; // the x^j shift from n^-j
        }
    }

    if (s0[0] != 0)
        throw std::logic_error("expansion: top order did not cancel symbolically");
    if (s0[1] != 0)
        throw std::logic_error("expansion: theta order did not cancel symbolically");

    std::vector<BigRat> a(J, BigRat(0));
    for (unsigned j = 1; j <= J; ++j) {
        BigRat residual = s0[j + 1];
        for (unsigned jp = 1; jp < j; ++jp)
            residual += a[jp - 1] * chan[jp][j + 1];
        const BigRat t = chan[j][j + 1];
        if (t == 0)
            throw DegeneratePivotError("expansion: vanishing pivot for a_" +
                                       std::to_string(j));
        a[j - 1] = -residual / t;
    }

    // the whole truncated series must vanish identically
    for (size_t t = 0; t < len; ++t) {
        BigRat total = s0[t];
        for (unsigned j = 1; j <= J; ++j)
            total += a[j - 1] * chan[j][t];
        if (total != 0)
            throw std::logic_error("expansion: residual series is not symbolically zero");
    }

    return AsymptoticExpansion{mu, theta, std::move(a)};
}

// --- constant estimation and recognition ---------------------------------

namespace {

BigFloat rat_to_float(const BigRat& r) {
    return BigFloat(numerator(r)) / BigFloat(denominator(r));
}

BigFloat pi_value() { return 4 * atan(BigFloat(1)); }

BigFloat expansion_ratio(const SequenceRecord& seq, const AsymptoticExpansion& exp,
                         int64_t n) {
    const BigFloat nf(n);
    // mu^n exactly in the integers, then one rounding into the float
    const auto e = static_cast<unsigned>(n);
    const BigRat mu_pow(boost::multiprecision::pow(numerator(exp.mu), e),
                        boost::multiprecision::pow(denominator(exp.mu), e));
    BigFloat denom = rat_to_float(mu_pow);
    denom *= pow(nf, rat_to_float(exp.theta));
    BigFloat corr = 1;
    BigFloat inv_pow = 1;
    const BigFloat inv_n = BigFloat(1) / nf;
    for (const auto& aj : exp.a) {
        inv_pow *= inv_n;
        corr += rat_to_float(aj) * inv_pow;
    }
    return BigFloat(seq.at(n)) / (denom * corr);
}

} // namespace

ConstantEstimate estimate_constant(const SequenceRecord& seq,
                                   const AsymptoticExpansion& exp, int64_t at_n,
                                   unsigned precision_bits) {
    if (at_n < static_cast<int64_t>(10 * exp.order()))
        throw std::invalid_argument("estimate_constant: at_n must be >= 10*J");
    if (at_n < 2)
        throw std::invalid_argument("estimate_constant: at_n must be >= 2");
    FloatPrecisionGuard guard(precision_bits);
    // Binomially weighted three-point ratio. A subdominant root of modulus
    // |mu| contributes an alternating branch the smooth ansatz cannot carry
    // (it shows up for (k,l) = (2,2), z = 1, where -4 accompanies 4); the
    // (1,2,1)/4 filter cancels such a branch to two orders higher while
    // leaving non-oscillating cases untouched.
    const auto smoothed = [&](int64_t n) -> BigFloat {
        BigFloat s = expansion_ratio(seq, exp, n - 1) +
                     2 * expansion_ratio(seq, exp, n) +
                     expansion_ratio(seq, exp, n + 1);
        return s / 4;
    };
    ConstantEstimate est;
    est.precision_bits = precision_bits;
    est.at_n = at_n;
    est.value = smoothed(at_n);
    est.value_at_half = smoothed(std::max<int64_t>(2, at_n / 2));
    return est;
}

BigFloat ConstantCandidate::value() const {
    BigFloat v = rat_to_float(ratio) * sqrt(BigFloat(sqrt_arg));
    if (pi_half_exp != 0)
        v *= pow(pi_value(), BigFloat(pi_half_exp) / 2);
    return v;
}

std::string ConstantCandidate::str() const {
    std::string s = "(" + rational_to_string(ratio) + ")";
    if (sqrt_arg != 1)
        s += "*sqrt(" + std::to_string(sqrt_arg) + ")";
    if (pi_half_exp != 0) {
        s += "*pi^(";
        if (pi_half_exp % 2 == 0)
            s += std::to_string(pi_half_exp / 2);
        else
            s += std::to_string(pi_half_exp) + "/2";
        s += ")";
    }
    return s;
}

nlohmann::json ConstantCandidate::to_json() const {
    std::string pi_exp = pi_half_exp % 2 == 0
                             ? std::to_string(pi_half_exp / 2)
                             : std::to_string(pi_half_exp) + "/2";
    return {{"p", numerator(ratio).str()},
            {"q", denominator(ratio).str()},
            {"m", sqrt_arg},
            {"pi_exp", pi_exp}};
}

namespace {

// Best rational approximation with denominator (and numerator) within bound,
// by continued-fraction convergents.
std::optional<std::pair<BigInt, BigInt>> best_rational(BigFloat x, const BigInt& bound) {
    if (x <= 0)
        return std::nullopt;
    BigInt h0 = 0, h1 = 1, k0 = 1, k1 = 0; // convergent recurrences
    std::optional<std::pair<BigInt, BigInt>> best;
    for (int iter = 0; iter < 64; ++iter) {
        const BigInt a = boost::multiprecision::floor(x).convert_to<BigInt>();
        const BigInt h = a * h1 + h0, k = a * k1 + k0;
        if (k > bound || h > bound)
            break;
        best = {h, k};
        const BigFloat frac = x - BigFloat(a);
        if (frac == 0)
            break;
        const BigFloat next = BigFloat(1) / frac;
        if (next > BigFloat(bound) * BigFloat(bound) * 1000)
            break; // at working precision this is exact
        h0 = h1;
        h1 = h;
        k0 = k1;
        k1 = k;
        x = next;
    }
    return best;
}

} // namespace

std::optional<ConstantCandidate> match_constant(const ConstantEstimate& c,
                                                unsigned search_bound,
                                                std::string* diagnostic) {
    if (c.value <= 0) {
        if (diagnostic)
            *diagnostic = "estimate is not positive";
        return std::nullopt;
    }
    FloatPrecisionGuard guard(c.precision_bits);
    const BigFloat pi = pi_value();
    const BigFloat tol = BigFloat("1e-8");
    const BigInt bound(search_bound);

    std::vector<ConstantCandidate> matches;
    for (uint32_t m : {1u, 2u, 3u, 5u, 6u}) {
        const BigFloat sqrt_m = sqrt(BigFloat(m));
        for (int e2 = -4; e2 <= 2; ++e2) {
            const BigFloat scale = sqrt_m * pow(pi, BigFloat(e2) / 2);
            const auto pq = best_rational(c.value / scale, bound);
            if (!pq || pq->first == 0)
                continue;
            ConstantCandidate cand{BigRat(pq->first, pq->second), m, e2};
            if (abs(cand.value() - c.value) <= tol * c.value)
                matches.push_back(std::move(cand));
        }
    }
    if (matches.size() == 1)
        return matches[0];
    if (diagnostic) {
        if (matches.empty())
            *diagnostic = "no candidate within relative 1e-8";
        else {
            *diagnostic = "ambiguous: ";
            for (const auto& cand : matches)
                *diagnostic += cand.str() + " ";
        }
    }
    return std::nullopt;
}

nlohmann::json AsymptoticExpansion::to_json() const {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& aj : a)
        coeffs.push_back(rational_to_string(aj));
    return {{"mu", rational_to_string(mu)},
            {"theta", rational_to_string(theta)},
            {"coeffs", coeffs}};
}

AsymptoticExpansion AsymptoticExpansion::from_json(const nlohmann::json& j) {
    AsymptoticExpansion e;
    e.mu = parse_rational(j.at("mu").get<std::string>());
    e.theta = parse_rational(j.at("theta").get<std::string>());
    for (const auto& s : j.at("coeffs"))
        e.a.push_back(parse_rational(s.get<std::string>()));
    return e;
}

nlohmann::json expansion_to_json(const AsymptoticExpansion& exp,
                                 const ConstantEstimate* constant) {
    nlohmann::json j = exp.to_json();
    if (constant) {
        std::ostringstream val;
        val << std::setprecision(40) << constant->value;
        nlohmann::json cj = {{"value_decimal", val.str()}, {"at_n", constant->at_n},
                             {"matched", nullptr}};
        if (constant->matched)
            cj["matched"] = constant->matched->to_json();
        j["constant"] = cj;
    } else {
        j["constant"] = nullptr;
    }
    return j;
}

} // namespace hookrec
