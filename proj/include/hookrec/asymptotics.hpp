#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hookrec/polynomial.hpp"
#include "hookrec/recurrence.hpp"
#include "hookrec/sequence.hpp"

namespace hookrec {

/// The analyzed recurrence falls outside the power-law ansatz
/// (irrational/complex/repeated/tied dominant root); the message names the
/// offending deflated factor.
struct UnsupportedAsymptoticsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An order-by-order equation had a vanishing pivot, so the power-law
/// ansatz cannot determine the next coefficient.
struct DegeneratePivotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Power-law asymptotic form A(n) ~ C * mu^n * n^theta * (1 + sum a_j n^-j).
/// All fields exact rationals; C lives in ConstantEstimate.
struct AsymptoticExpansion {
    BigRat mu;
    BigRat theta;
    std::vector<BigRat> a; // a_1 .. a_J

    size_t order() const { return a.size(); }
    nlohmann::json to_json() const;
    static AsymptoticExpansion from_json(const nlohmann::json& j);

    bool operator==(const AsymptoticExpansion&) const = default;
};

/// Symbolic constant (p/q) * sqrt(m) * pi^(e/2) with m squarefree.
struct ConstantCandidate {
    BigRat ratio;            // p/q, positive, lowest terms
    uint32_t sqrt_arg = 1;   // m
    int pi_half_exp = 0;     // exponent of pi times 2, so -3 means pi^(-3/2)

    BigFloat value() const;  // at the current default float precision
    std::string str() const;
    nlohmann::json to_json() const;

    bool operator==(const ConstantCandidate&) const = default;
};

/// Empirical estimate of the constant factor C.
struct ConstantEstimate {
    BigFloat value;
    BigFloat value_at_half; // same ratio at at_n/2, for convergence gauging
    unsigned precision_bits = 256;
    int64_t at_n = 0;
    std::optional<ConstantCandidate> matched;
};

/// The unique rational root of strictly largest modulus of cp, verified
/// simple, with every remaining root exactly bounded below it (Graeffe
/// root-squaring on the deflated factor). When a positive root and its
/// negative share the largest modulus the positive one is returned: the
/// sequences in scope have positive terms, so the positive axis governs
/// growth. Anything else throws UnsupportedAsymptoticsError.
BigRat dominant_root(const IntPoly& cp);

/// Order-by-order solve of the power-law ansatz against the recurrence:
/// mu from the characteristic polynomial, theta from the first subleading
/// order, then a_1..a_J from successive affine equations, all exact.
AsymptoticExpansion expansion(const RecurrenceOperator& op, unsigned J);

/// A(at_n) / (mu^at_n * at_n^theta * (1 + sum a_j at_n^-j)) at the given
/// float precision. Requires a term at at_n and at_n >= 10*J.
ConstantEstimate estimate_constant(const SequenceRecord& seq,
                                   const AsymptoticExpansion& exp, int64_t at_n,
                                   unsigned precision_bits = 256);

/// Searches (p/q)*sqrt(m)*pi^(e/2) with p,q <= search_bound,
/// m in {1,2,3,5,6}, e/2 in {-2,-3/2,...,1} for the unique candidate within
/// relative 1e-8 of the estimate. Ambiguity or no hit returns nothing;
/// `diagnostic`, when given, says why.
std::optional<ConstantCandidate> match_constant(const ConstantEstimate& c,
                                                unsigned search_bound = 200,
                                                std::string* diagnostic = nullptr);

/// JSON per the expansion schema, with the constant block when supplied.
nlohmann::json expansion_to_json(const AsymptoticExpansion& exp,
                                 const ConstantEstimate* constant = nullptr);

} // namespace hookrec
