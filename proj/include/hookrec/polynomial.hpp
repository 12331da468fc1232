#pragma once

#include <string>
#include <vector>

#include "hookrec/bigint.hpp"

namespace hookrec {

/// Dense univariate polynomial over an exact coefficient ring.
/// Coefficients ascend by degree; the representation never carries a
/// trailing zero, so the zero polynomial has no coefficients at all.
template <typename T>
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }

    bool is_zero() const { return c_.empty(); }
    /// Degree, with deg 0 = -1 by convention.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(size_t d) const { return d < c_.size() ? c_[d] : T(0); }
    const T& leading() const { return c_.back(); }

    template <typename X>
    X eval(const X& x) const {
        X acc(0);
        for (size_t i = c_.size(); i-- > 0;)
            acc = acc * x + X(c_[i]);
        return acc;
    }

    Poly operator+(const Poly& o) const {
        std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
        for (size_t i = 0; i < c_.size(); ++i)
            r[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i)
            r[i] += o.c_[i];
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<T> r = c_;
        for (auto& x : r)
            x = -x;
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero())
            return Poly();
        std::vector<T> r(c_.size() + o.c_.size() - 1, T(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(r));
    }
    Poly operator*(const T& s) const {
        std::vector<T> r = c_;
        for (auto& x : r)
            x = x * s;
        return Poly(std::move(r));
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }

    /// Human form like "3n^2 - n + 5" (empty polynomial prints "0").
    std::string str(const std::string& var = "n") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }
    std::vector<T> c_;
};

using IntPoly = Poly<BigInt>;
using RatPoly = Poly<BigRat>;

template <typename T>
std::string Poly<T>::str(const std::string& var) const {
    if (is_zero())
        return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0)
            continue;
        const bool neg = c_[i] < 0;
        T mag = neg ? T(-c_[i]) : c_[i];
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string magstr;
        if constexpr (std::is_same_v<T, BigRat>)
            magstr = rational_to_string(mag);
        else
            magstr = mag.str();
        if (i == 0) {
            out += magstr;
        } else {
            if (mag != 1)
                out += magstr + "*";
            out += var;
            if (i > 1)
                out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace hookrec
