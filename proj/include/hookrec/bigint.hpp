#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace hookrec {

/// Exact arbitrary-precision integer (GMP-backed).
using BigInt = boost::multiprecision::mpz_int;

/// Exact rational, always in lowest terms with positive denominator.
using BigRat = boost::multiprecision::mpq_rational;

/// Arbitrary-precision binary float with runtime-settable precision (MPFR-backed).
using BigFloat = boost::multiprecision::mpfr_float;

/// RAII guard that sets the thread-default BigFloat precision in bits and
/// restores the previous value on scope exit.
class FloatPrecisionGuard {
public:
    explicit FloatPrecisionGuard(unsigned bits)
        : saved_(BigFloat::default_precision()) {
        // boost API takes decimal digits; convert with headroom.
        BigFloat::default_precision(static_cast<unsigned>(bits * 0.3011) + 4);
    }
    ~FloatPrecisionGuard() { BigFloat::default_precision(saved_); }
    FloatPrecisionGuard(const FloatPrecisionGuard&) = delete;
    FloatPrecisionGuard& operator=(const FloatPrecisionGuard&) = delete;

private:
    unsigned saved_;
};

/// Exact integer quotient a/b; throws std::logic_error if b does not divide a.
inline BigInt divide_exact(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0)
        throw std::logic_error("divide_exact: inexact division");
    return q;
}

/// n! as an exact integer.
inline BigInt factorial(unsigned long n) {
    BigInt f = 1;
    for (unsigned long i = 2; i <= n; ++i)
        f *= i;
    return f;
}

/// gcd of all entries (nonnegative); 0 for an all-zero or empty vector.
inline BigInt content(const std::vector<BigInt>& v) {
    BigInt g = 0;
    for (const auto& x : v) {
        g = gcd(g, x);
        if (g == 1)
            break;
    }
    return g;
}

/// Parses "p/q" or "p" into an exact rational.
inline BigRat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return BigRat(BigInt(s));
    return BigRat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

/// Renders a rational as "p/q", or "p" when the denominator is 1.
inline std::string rational_to_string(const BigRat& r) {
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace hookrec
