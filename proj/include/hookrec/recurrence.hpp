#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hookrec/polynomial.hpp"
#include "hookrec/sequence.hpp"

namespace hookrec {

/// Annihilating operator sum_{i=0..L} p_i(n) N^i with integer polynomial
/// coefficients. Canonical form: coefficient content 1 across all p_i,
/// p_L nonzero with positive leading coefficient.
struct RecurrenceOperator {
    std::vector<IntPoly> coeffs; // p_0 .. p_L
    int64_t valid_from = 0;      // smallest index at which the relation is verified

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    const IntPoly& p(size_t i) const { return coeffs[i]; }

    bool operator==(const RecurrenceOperator& o) const { return coeffs == o.coeffs; }

    /// Rendering like "(n^2+4*n+3)N^3 - (3*n^2+11*n+9)N^2 ..."
    std::string str() const;

    nlohmann::json to_json() const;
    static RecurrenceOperator from_json(const nlohmann::json& j);
};

/// sum_i p_i(n) A(n+i); throws std::out_of_range if terms n..n+L are missing.
BigInt apply(const RecurrenceOperator& op, const SequenceRecord& seq, int64_t n);

/// Divides out the collective coefficient content and fixes the sign so the
/// leading coefficient of p_L is positive. Trailing zero polynomials are
/// dropped (they lower the true order).
RecurrenceOperator canonicalize(RecurrenceOperator op);

struct InsufficientTermsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Undetermined-coefficients search for an annihilating operator.
/// Tries (L, D) pairs with L ascending, then D; for each, solves the exact
/// linear system sum_{i,d} c_{i,d} n^d A(n+i) = 0 over every available n and
/// keeps a kernel vector that rechecks against all in-sample terms.
/// Requires at least `surplus` more equations than unknowns per attempt.
/// Returns nothing when no attempt within bounds yields an operator.
std::optional<RecurrenceOperator> fit_recurrence(const SequenceRecord& seq,
                                                 int L_max = 8, int D_max = 8,
                                                 int surplus = 10);

/// Result of scanning apply(op, seq, n) over every checkable index.
struct VerifyReport {
    int64_t first_checked = 0;
    int64_t last_checked = -1;          // largest n with all needed terms
    bool holds_everywhere = false;      // zero at every checked index
    std::optional<int64_t> valid_from;  // smallest v with zeros from v to the end
    std::optional<int64_t> first_failure;
    bool pass = false; // semi-rigorously verified on >= holdout trailing indices

    std::string str() const;
};

/// Checks the relation at every index seq can support and reports the
/// discovered validity range. `holdout` is the number of trailing checked
/// indices that must hold for the report to pass.
VerifyReport verify(const RecurrenceOperator& op, const SequenceRecord& seq,
                    int64_t holdout = 20);

/// With d = max_i deg p_i: sum_i [n^d coefficient of p_i] mu^i.
/// Its dominant root is the exponential growth base of solutions.
IntPoly characteristic_polynomial(const RecurrenceOperator& op);

} // namespace hookrec
