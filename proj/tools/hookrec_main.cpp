#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hookrec/asymptotics.hpp"
#include "hookrec/cache.hpp"
#include "hookrec/paper_cases.hpp"
#include "hookrec/recurrence.hpp"
#include "hookrec/sequence.hpp"

using namespace hookrec;

namespace {

// Exit contract: 0 ok, 2 invalid flags, 3 no operator found,
// 4 verification failure, 5 unsupported asymptotics.
constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kNoOperator = 3;
constexpr int kVerifyFailed = 4;
constexpr int kUnsupported = 5;

struct Options {
    uint32_t k = 2;
    uint32_t l = 1;
    int z = 1;
    int64_t n = 20;        // seq/extend: max index; fit: fitting terms
    int64_t fit_terms = 60;
    int64_t holdout = 20;
    int l_max = 8;
    int d_max = 8;
    int surplus = 10;
    unsigned J = 10;
    int64_t at_n = 300;
    unsigned bound = 200;
    unsigned precision_bits = 256;
    std::string format = "text";
    std::string cache_dir;
    int perturb = -1;
    int64_t perturb_n = -1;
    bool sequential = false;
};

bool json_mode(const Options& o) { return o.format == "json"; }

SequenceKey key_of(const Options& o) { return {o.k, o.l, o.z}; }

std::string seq_name(const SequenceKey& key) {
    return "S_{" + std::to_string(key.k) + "," + std::to_string(key.l) + "}^(" +
           std::to_string(key.z) + ")";
}

CacheEntry load_or_new(const Cache& cache, const SequenceKey& key) {
    if (auto e = cache.load(key))
        return *std::move(e);
    CacheEntry e;
    e.seq.key = key;
    e.seq.start = 0;
    return e;
}

/// Guarantees enumeration-backed values for n = 0..n_max, reusing the cached
/// direct prefix and overwriting any recurrence-extended value in range.
void ensure_direct(CacheEntry& e, int64_t n_max) {
    const SequenceKey key = *e.seq.key;
    if (e.seq.terms.empty()) {
        e.seq = compute_series(key.k, key.l, key.z, static_cast<uint32_t>(n_max));
        e.direct = static_cast<int64_t>(e.seq.terms.size());
        return;
    }
    for (int64_t n = e.direct; n <= n_max; ++n) {
        BigInt v = compute_S(key.k, key.l, key.z, static_cast<uint32_t>(n));
        if (e.seq.has(n))
            e.seq.terms[static_cast<size_t>(n - e.seq.start)] = std::move(v);
        else
            e.seq.terms.push_back(std::move(v));
    }
    e.direct = std::max(e.direct, n_max + 1);
}

SequenceRecord direct_record(const CacheEntry& e, int64_t limit = -1) {
    SequenceRecord r;
    r.key = e.seq.key;
    r.start = e.seq.start;
    int64_t take = e.direct;
    if (limit >= 0)
        take = std::min(take, limit);
    r.terms.assign(e.seq.terms.begin(), e.seq.terms.begin() + take);
    return r;
}

void store_entry(const Cache& cache, const CacheEntry& e) {
    try {
        cache.store(e);
    } catch (const std::exception& ex) {
        std::cerr << "warning: cache write failed: " << ex.what() << "\n";
    }
}

nlohmann::json verify_json(const VerifyReport& vr, int64_t holdout) {
    nlohmann::json j = {{"first_checked", vr.first_checked},
                        {"last_checked", vr.last_checked},
                        {"holds_everywhere", vr.holds_everywhere},
                        {"valid_from", nullptr},
                        {"first_failure", nullptr},
                        {"holdout", holdout},
                        {"pass", vr.pass}};
    if (vr.valid_from)
        j["valid_from"] = *vr.valid_from;
    if (vr.first_failure)
        j["first_failure"] = *vr.first_failure;
    return j;
}

/// Fits (or reuses) a verified operator for the entry. Returns kOk and fills
/// `report`, or the failing exit code. `refit` forces a fresh fit.
int ensure_operator(CacheEntry& e, const Options& o, VerifyReport& report,
                    bool refit = false) {
    ensure_direct(e, o.fit_terms - 1 + o.holdout);
    if (refit)
        e.op.reset();
    if (!e.op) {
        const SequenceRecord head = direct_record(e, o.fit_terms);
        auto fitted = fit_recurrence(head, o.l_max, o.d_max, o.surplus);
        if (!fitted) {
            std::cerr << "no operator found for " << seq_name(*e.seq.key)
                      << " within bounds (L<=" << o.l_max << ", D<=" << o.d_max
                      << ", surplus " << o.surplus << ")\n";
            return kNoOperator;
        }
        e.op = std::move(*fitted);
    }
    report = verify(*e.op, direct_record(e), o.holdout);
    if (!report.pass) {
        std::cerr << "operator failed verification: " << report.str() << "\n";
        return kVerifyFailed;
    }
    e.op->valid_from = *report.valid_from;
    return kOk;
}

nlohmann::json record_json(const SequenceRecord& r) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : r.terms)
        terms.push_back(t.str());
    nlohmann::json j = {{"start", r.start}, {"terms", terms}};
    if (r.key) {
        j["k"] = r.key->k;
        j["l"] = r.key->l;
        j["z"] = r.key->z;
    }
    return j;
}

void print_terms_from_one(const SequenceRecord& r, int64_t n_max) {
    for (int64_t n = 1; n <= n_max; ++n) {
        if (n > 1)
            std::cout << ", ";
        std::cout << r.at(n).str();
    }
    std::cout << "\n";
}

std::string float_str(const BigFloat& x, int digits) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

int cmd_seq(const Options& o) {
    const Cache cache(Cache::resolve_dir(o.cache_dir));
    CacheEntry e = load_or_new(cache, key_of(o));
    ensure_direct(e, o.n);
    store_entry(cache, e);
    if (json_mode(o)) {
        SequenceRecord r = e.seq;
        r.terms.resize(static_cast<size_t>(o.n) + 1);
        std::cout << record_json(r).dump(2) << "\n";
    } else {
        print_terms_from_one(e.seq, o.n);
    }
    return kOk;
}

int cmd_fit(const Options& o) {
    const Cache cache(Cache::resolve_dir(o.cache_dir));
    CacheEntry e = load_or_new(cache, key_of(o));
    VerifyReport vr;
    const int rc = ensure_operator(e, o, vr, /*refit=*/true);
    if (rc != kOk)
        return rc;
    store_entry(cache, e);
    if (json_mode(o)) {
        nlohmann::json j = {{"operator", e.op->to_json()},
                            {"verify", verify_json(vr, o.holdout)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << seq_name(*e.seq.key) << " annihilating operator (order "
                  << e.op->order() << ", valid from n=" << e.op->valid_from << "):\n"
                  << "  " << e.op->str() << "\n"
                  << "verify: " << vr.str() << "\n";
    }
    return kOk;
}

int cmd_extend(const Options& o) {
    const Cache cache(Cache::resolve_dir(o.cache_dir));
    CacheEntry e = load_or_new(cache, key_of(o));
    VerifyReport vr;
    const int rc = ensure_operator(e, o, vr);
    if (rc != kOk)
        return rc;
    if (e.seq.last_index() < o.n)
        e.seq = extend_via_recurrence(e.seq, *e.op, o.n);
    store_entry(cache, e);
    if (json_mode(o)) {
        SequenceRecord r = e.seq;
        if (r.last_index() > o.n)
            r.terms.resize(static_cast<size_t>(o.n - r.start) + 1);
        std::cout << record_json(r).dump(2) << "\n";
    } else {
        print_terms_from_one(e.seq, o.n);
    }
    return kOk;
}

/// Shared tail of asy/const: expansion, extension to at_n, estimate, match.
int analyze(CacheEntry& e, const Options& o, AsymptoticExpansion& exp,
            ConstantEstimate& est) {
    exp = expansion(*e.op, o.J);
    if (e.seq.last_index() < o.at_n + 1)
        e.seq = extend_via_recurrence(e.seq, *e.op, o.at_n + 1);
    est = estimate_constant(e.seq, exp, o.at_n, o.precision_bits);
    std::string diag;
    est.matched = match_constant(est, o.bound, &diag);
    if (!est.matched && !diag.empty())
        std::cerr << "constant not recognized: " << diag << "\n";

    std::ostringstream val;
    val << std::setprecision(40) << est.value;
    nlohmann::json cj = {{"value_decimal", val.str()},
                         {"at_n", est.at_n},
                         {"matched", nullptr}};
    if (est.matched)
        cj["matched"] = est.matched->to_json();
    e.expansion = exp;
    e.constant = cj;
    return kOk;
}

int cmd_asy(const Options& o) {
    const Cache cache(Cache::resolve_dir(o.cache_dir));
    CacheEntry e = load_or_new(cache, key_of(o));
    VerifyReport vr;
    int rc = ensure_operator(e, o, vr);
    if (rc != kOk)
        return rc;
    AsymptoticExpansion exp;
    ConstantEstimate est;
    rc = analyze(e, o, exp, est);
    if (rc != kOk)
        return rc;
    store_entry(cache, e);
    if (json_mode(o)) {
        std::cout << expansion_to_json(exp, &est).dump(2) << "\n";
    } else {
        std::cout << seq_name(*e.seq.key) << " ~ C * mu^n * n^theta * (1 + sum a_j/n^j)\n"
                  << "mu    = " << rational_to_string(exp.mu) << "\n"
                  << "theta = " << rational_to_string(exp.theta) << "\n";
        for (size_t j = 0; j < exp.a.size(); ++j)
            std::cout << "a_" << j + 1 << (j + 1 < 10 ? "  " : " ") << "= "
                      << rational_to_string(exp.a[j]) << "\n";
        std::cout << "C     = " << float_str(est.value, 20) << " (estimated at n="
                  << est.at_n << ", " << est.precision_bits << "-bit)\n";
        if (est.matched)
            std::cout << "C     = " << est.matched->str() << " (recognized)\n";
        else
            std::cout << "C not recognized in the search family\n";
    }
    return kOk;
}

int cmd_const(const Options& o) {
    const Cache cache(Cache::resolve_dir(o.cache_dir));
    CacheEntry e = load_or_new(cache, key_of(o));
    VerifyReport vr;
    int rc = ensure_operator(e, o, vr);
    if (rc != kOk)
        return rc;
    AsymptoticExpansion exp;
    ConstantEstimate est;
    rc = analyze(e, o, exp, est);
    if (rc != kOk)
        return rc;
    store_entry(cache, e);
    if (json_mode(o)) {
        std::ostringstream v1, v2;
        v1 << std::setprecision(40) << est.value;
        v2 << std::setprecision(40) << est.value_at_half;
        nlohmann::json j = {{"value_decimal", v1.str()},
                            {"value_at_half_decimal", v2.str()},
                            {"at_n", est.at_n},
                            {"precision_bits", est.precision_bits},
                            {"matched", nullptr}};
        if (est.matched)
            j["matched"] = est.matched->to_json();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "C estimate = " << float_str(est.value, 20) << " (at n=" << est.at_n
                  << ", J=" << o.J << ", " << est.precision_bits << "-bit)\n"
                  << "C at n/2   = " << float_str(est.value_at_half, 20) << "\n";
        if (est.matched)
            std::cout << "C matched  = " << est.matched->str() << "\n";
        else
            std::cout << "C not recognized in the search family\n";
    }
    return kOk;
}

int cmd_paper(const Options& o) {
    PaperRunOptions prop;
    prop.holdout = o.holdout;
    prop.perturb_case = o.perturb;
    prop.perturb_n = o.perturb_n;
    const auto reports = run_paper_cases(prop, !o.sequential);

    bool all_pass = true;
    if (json_mode(o)) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& rep : reports) {
            nlohmann::json checks = nlohmann::json::array();
            for (const auto& c : rep.checks)
                checks.push_back({{"label", c.label}, {"pass", c.pass},
                                  {"detail", c.detail}});
            out.push_back({{"name", rep.name}, {"pass", rep.pass()},
                           {"checks", checks}});
            all_pass = all_pass && rep.pass();
        }
        std::cout << out.dump(2) << "\n";
    } else {
        const std::vector<std::string> labels = {"terms", "fit", "operator",
                                                 "verify", "expansion", "constant"};
        std::cout << std::left << std::setw(12) << "case";
        for (const auto& l : labels)
            std::cout << std::setw(11) << l;
        std::cout << "\n";
        for (const auto& rep : reports) {
            std::cout << std::left << std::setw(12) << rep.name;
            for (const auto& l : labels) {
                std::string mark = "-";
                for (const auto& c : rep.checks)
                    if (c.label == l)
                        mark = c.pass ? "ok" : "FAIL";
                std::cout << std::setw(11) << mark;
            }
            std::cout << "\n";
            all_pass = all_pass && rep.pass();
        }
        bool reported = false;
        for (const auto& rep : reports)
            for (const auto& c : rep.checks)
                if (!c.pass && !reported) {
                    std::cout << "first mismatch: " << rep.name << " " << c.label
                              << ": " << c.detail << "\n";
                    reported = true;
                }
        std::cout << (all_pass ? "all cases pass" : "reproduction FAILED") << "\n";
    }
    return all_pass ? kOk : 1;
}

template <typename F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const UnsupportedAsymptoticsError& e) {
        std::cerr << "unsupported asymptotics: " << e.what() << "\n";
        return kUnsupported;
    } catch (const DegeneratePivotError& e) {
        std::cerr << "unsupported asymptotics: " << e.what() << "\n";
        return kUnsupported;
    } catch (const RecurrenceError& e) {
        std::cerr << "operator failed during extension: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const InsufficientTermsError& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

void add_key_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("-k", o.k, "unbounded rows of the hook")->capture_default_str();
    cmd->add_option("-l", o.l, "width bound for the remaining rows")
        ->capture_default_str();
    cmd->add_option("-z", o.z, "power applied to each tableau count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_common_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--cache-dir", o.cache_dir,
                    "cache directory (default: $HOOKREC_CACHE_DIR or ~/.cache/hookrec)");
}

void add_fit_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--terms", o.fit_terms, "terms used for fitting")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--holdout", o.holdout, "extra directly computed terms to verify on")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--l-max", o.l_max, "largest operator order tried")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--d-max", o.d_max, "largest coefficient degree tried")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--surplus", o.surplus, "required equations beyond unknowns")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"exact hook-restricted tableaux sums, fitted recurrences, and asymptotics"};
    app.require_subcommand(1);

    auto* seq = app.add_subcommand("seq", "print exact terms by direct enumeration");
    add_key_flags(seq, o);
    add_common_flags(seq, o);
    seq->add_option("-n,--terms", o.n, "largest index printed")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    auto* fit = app.add_subcommand("fit", "guess and verify an annihilating operator");
    add_key_flags(fit, o);
    add_common_flags(fit, o);
    add_fit_flags(fit, o);

    auto* ext = app.add_subcommand("extend", "extend the sequence through the operator");
    add_key_flags(ext, o);
    add_common_flags(ext, o);
    add_fit_flags(ext, o);
    ext->add_option("-n", o.n, "target index")
        ->required()
        ->check(CLI::PositiveNumber);

    auto* asy = app.add_subcommand("asy", "derive the asymptotic expansion and constant");
    add_key_flags(asy, o);
    add_common_flags(asy, o);
    add_fit_flags(asy, o);
    asy->add_option("-J", o.J, "expansion order")->capture_default_str();
    asy->add_option("--at-n", o.at_n, "index for the constant estimate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* cst = app.add_subcommand("const", "estimate and recognize the constant factor");
    add_key_flags(cst, o);
    add_common_flags(cst, o);
    add_fit_flags(cst, o);
    cst->add_option("-J", o.J, "expansion order")->capture_default_str();
    cst->add_option("--at-n", o.at_n, "index for the constant estimate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cst->add_option("--bound", o.bound, "numerator/denominator search bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cst->add_option("--precision-bits", o.precision_bits, "working float precision")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* paper = app.add_subcommand("paper", "reproduce the four published case studies");
    add_common_flags(paper, o);
    paper->add_option("--holdout", o.holdout, "held-out terms per case")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    paper->add_flag("--sequential", o.sequential, "run the cases one after another");
    paper->add_option("--perturb", o.perturb,
                      "self-test: corrupt one expected term of case 0..3");
    paper->add_option("--perturb-n", o.perturb_n,
                      "self-test: index of the corrupted expected term");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (seq->parsed())
        return guarded([&] { return cmd_seq(o); });
    if (fit->parsed())
        return guarded([&] { return cmd_fit(o); });
    if (ext->parsed())
        return guarded([&] { return cmd_extend(o); });
    if (asy->parsed())
        return guarded([&] { return cmd_asy(o); });
    if (cst->parsed())
        return guarded([&] { return cmd_const(o); });
    if (paper->parsed())
        return guarded([&] { return cmd_paper(o); });
    return kUsage;
}
