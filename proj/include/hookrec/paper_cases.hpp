#pragma once

#include <string>
#include <vector>

#include "hookrec/asymptotics.hpp"
#include "hookrec/recurrence.hpp"
#include "hookrec/sequence.hpp"

namespace hookrec {

/// Reference data for one published case study: the printed terms (n >= 1),
/// the annihilating operator in canonical cleared form, the order-3
/// expansion, and the closed-form constant.
struct PaperCase {
    SequenceKey key;
    std::vector<BigInt> terms; // values at n = 1 .. terms.size()
    RecurrenceOperator op;
    BigRat mu;
    BigRat theta;
    std::vector<BigRat> a3; // order-3 coefficients; empty where unpublished
    ConstantCandidate constant;

    std::string name() const;
};

/// The four embedded case studies: (2,1) and (2,2), each at z = 1 and 2.
const std::vector<PaperCase>& paper_cases();

/// One comparison made during a reproduction run.
struct CaseCheck {
    std::string label;
    bool pass = false;
    std::string detail;
};

struct CaseReport {
    std::string name;
    std::vector<CaseCheck> checks;

    bool pass() const;
};

struct PaperRunOptions {
    int64_t holdout = 20;
    // negative-control hook: bump the expected term at perturb_n of case
    // perturb_case so the run must fail naming that term
    int perturb_case = -1;
    int64_t perturb_n = -1; // <0 means the last printed term
};

/// Full pipeline for one case: recompute the series, fit, compare the
/// canonical operator, verify on held-out terms, compare the order-3
/// expansion, and recover the constant at n = 300.
CaseReport run_paper_case(const PaperCase& pc, const PaperRunOptions& opt,
                          int case_index);

/// All cases, concurrently when asked; report order is fixed regardless.
std::vector<CaseReport> run_paper_cases(const PaperRunOptions& opt = {},
                                        bool parallel = true);

} // namespace hookrec
