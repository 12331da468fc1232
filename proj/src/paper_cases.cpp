#include "hookrec/paper_cases.hpp"

#include <future>
#include <iomanip>
#include <sstream>

namespace hookrec {

namespace {

IntPoly ip(std::initializer_list<long long> cs) {
    std::vector<BigInt> v;
    v.reserve(cs.size());
    for (long long c : cs)
        v.emplace_back(c);
    return IntPoly(std::move(v));
}

std::vector<BigInt> ints(std::initializer_list<long long> ts) {
    std::vector<BigInt> v;
    v.reserve(ts.size());
    for (long long t : ts)
        v.emplace_back(t);
    return v;
}

RecurrenceOperator make_op(std::vector<IntPoly> ps) {
    RecurrenceOperator op;
    op.coeffs = std::move(ps);
    op.valid_from = 0;
    return op;
}

std::string float_str(const BigFloat& x, int digits) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

} // namespace

std::string PaperCase::name() const {
    return "(" + std::to_string(key.k) + "," + std::to_string(key.l) +
           ") z=" + std::to_string(key.z);
}

bool CaseReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

const std::vector<PaperCase>& paper_cases() {
    static const std::vector<PaperCase> cases = [] {
        std::vector<PaperCase> v;
        v.push_back({SequenceKey{2, 1, 1},
                     ints({1, 2, 4, 10, 26, 71, 197, 554, 1570, 4477, 12827, 36895,
                           106471, 308114, 893804, 2598314, 7567466, 22076405,
                           64498427, 188689685}),
                     make_op({ip({6, 9, 3}), ip({0, -2, -1}), ip({-9, -11, -3}),
                              ip({3, 4, 1})}),
                     BigRat(3), BigRat(-1, 2),
                     {BigRat(-3, 16), BigRat(1, 512), BigRat(135, 8192)},
                     ConstantCandidate{BigRat(1, 4), 3, -1}});
        v.push_back({SequenceKey{2, 1, 2},
                     ints({1, 2, 6, 24, 120, 695, 4403, 29540, 206244, 1483371,
                           10919271, 81896661, 623810421, 4813777566, 37561178658,
                           295907998908, 2350767037116}),
                     make_op({ip({-36, -108, -117, -54, -9}),
                              ip({72, 232, 254, 116, 19}),
                              ip({-45, -148, -159, -70, -11}), ip({9, 24, 22, 8, 1})}),
                     BigRat(9), BigRat(-2),
                     {BigRat(3, 4), BigRat(53, 32), BigRat(261, 64)},
                     ConstantCandidate{BigRat(9, 128), 3, -2}});
        v.push_back({SequenceKey{2, 2, 1},
                     ints({1, 2, 4, 10, 26, 76, 232, 764, 2578, 9076, 32264, 117448,
                           428936, 1589680, 5897504, 22101304, 82851218, 312935236,
                           1182083272, 4491680504, 17067914056, 65167445872}),
                     make_op({ip({0, -128, 128}), ip({32, -128, -192}),
                              ip({32, 168, 88}), ip({96, 28, -4}), ip({-100, -50, -6}),
                              ip({20, 9, 1})}),
                     BigRat(4), BigRat(-1),
                     {}, // only mu and theta are published for this case
                     ConstantCandidate{BigRat(1, 4), 1, -2}});
        v.push_back({SequenceKey{2, 2, 2},
                     ints({1, 2, 6, 24, 120, 720, 5040, 40320, 361116, 3540600,
                           37207368, 411988896, 4747167568, 56428884512, 687793860000,
                           8559142303296, 108400653865572}),
                     make_op({ip({0, -512, 1024, 512, -1024}),
                              ip({-32, 3696, 11376, 9408, 2624}),
                              ip({-4736, -16048, -18336, -8720, -1504}),
                              ip({3984, 10004, 8120, 2752, 340}),
                              ip({-1000, -2100, -1344, -348, -32}),
                              ip({80, 136, 69, 14, 1})}),
                     BigRat(16), BigRat(-7, 2),
                     {BigRat(33, 8), BigRat(2145, 128), BigRat(81723, 1024)},
                     ConstantCandidate{BigRat(1, 32), 1, -3}});
        return v;
    }();
    return cases;
}

CaseReport run_paper_case(const PaperCase& pc, const PaperRunOptions& opt,
                          int case_index) {
    CaseReport rep;
    rep.name = pc.name();

    std::vector<BigInt> expected = pc.terms;
    if (opt.perturb_case == case_index) {
        const size_t idx =
            (opt.perturb_n >= 1 && opt.perturb_n <= static_cast<int64_t>(expected.size()))
                ? static_cast<size_t>(opt.perturb_n - 1)
                : expected.size() - 1;
        expected[idx] += 1;
    }

    constexpr int64_t kFitTerms = 60;
    const int64_t n_max = kFitTerms - 1 + opt.holdout;
    const SequenceRecord full =
        compute_series(pc.key.k, pc.key.l, pc.key.z, static_cast<uint32_t>(n_max));

    {
        bool ok = true;
        std::string detail =
            std::to_string(expected.size()) + " published terms reproduced";
        for (size_t i = 0; i < expected.size(); ++i) {
            const int64_t n = static_cast<int64_t>(i) + 1;
            if (full.at(n) != expected[i]) {
                ok = false;
                detail = "S(" + std::to_string(n) + ") = " + full.at(n).str() +
                         ", expected " + expected[i].str();
                break;
            }
        }
        rep.checks.push_back({"terms", ok, detail});
    }

    SequenceRecord head = full;
    head.terms.resize(kFitTerms);
    const auto fitted = fit_recurrence(head);
    rep.checks.push_back({"fit", fitted.has_value(),
                          fitted ? "order " + std::to_string(fitted->order())
                                 : "no operator within default bounds"});
    if (!fitted)
        return rep;

    {
        const bool ok = *fitted == pc.op;
        rep.checks.push_back(
            {"operator", ok,
             ok ? fitted->str() : "got " + fitted->str() + " | want " + pc.op.str()});
    }

    {
        const VerifyReport vr = verify(*fitted, full, opt.holdout);
        rep.checks.push_back({"verify", vr.pass, vr.str()});
        if (!vr.pass)
            return rep;
    }

    try {
        const AsymptoticExpansion e3 = expansion(*fitted, 3);
        bool ok = e3.mu == pc.mu && e3.theta == pc.theta;
        if (ok && !pc.a3.empty()) {
            for (size_t j = 0; j < pc.a3.size(); ++j)
                if (e3.a.at(j) != pc.a3[j])
                    ok = false;
        }
        std::string detail = "mu=" + rational_to_string(e3.mu) +
                             " theta=" + rational_to_string(e3.theta);
        for (const auto& aj : e3.a)
            detail += " " + rational_to_string(aj);
        rep.checks.push_back({"expansion", ok, detail});
        if (!ok)
            return rep;
    } catch (const std::exception& ex) {
        rep.checks.push_back({"expansion", false, ex.what()});
        return rep;
    }

    try {
        const AsymptoticExpansion e10 = expansion(*fitted, 10);
        const SequenceRecord ext = extend_via_recurrence(full, *fitted, 301);
        ConstantEstimate est = estimate_constant(ext, e10, 300);
        std::string diag;
        const auto matched = match_constant(est, 200, &diag);
        bool ok = matched.has_value() && *matched == pc.constant;
        std::string detail;
        if (matched) {
            FloatPrecisionGuard guard(est.precision_bits);
            const BigFloat rel = abs(est.value / matched->value() - 1);
            ok = ok && rel <= 1e-6;
            detail = matched->str() + " (relative error " + float_str(rel, 3) + ")";
        } else {
            detail = "no symbolic match: " + diag;
        }
        rep.checks.push_back({"constant", ok, detail});
    } catch (const std::exception& ex) {
        rep.checks.push_back({"constant", false, ex.what()});
    }
    return rep;
}

std::vector<CaseReport> run_paper_cases(const PaperRunOptions& opt, bool parallel) {
    const auto& cases = paper_cases();
    std::vector<CaseReport> out(cases.size());
    if (parallel) {
        std::vector<std::future<CaseReport>> futures;
        futures.reserve(cases.size());
        for (size_t i = 0; i < cases.size(); ++i)
            futures.push_back(std::async(std::launch::async, run_paper_case,
                                         std::cref(cases[i]), std::cref(opt),
                                         static_cast<int>(i)));
        for (size_t i = 0; i < cases.size(); ++i)
            out[i] = futures[i].get();
    } else {
        for (size_t i = 0; i < cases.size(); ++i)
            out[i] = run_paper_case(cases[i], opt, static_cast<int>(i));
    }
    return out;
}

} // namespace hookrec
