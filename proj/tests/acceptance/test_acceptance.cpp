// Acceptance suite: one line per criterion, exit 0 only if all pass.
// Criterion 5 carries a known red clause; its line prints the measured
// mismatch so the failure is a statement about the source identity, not a
// silent breakage (details in the check report itself).

#include "hktlab/checks.hpp"
#include "hktlab/connection.hpp"
#include "hktlab/quaternionic.hpp"
#include "hktlab/transform.hpp"
#include "hktlab/zoo.hpp"
#include "../support.hpp"

#include <cstdio>
#include <regex>
#include <string>

using namespace hktlab;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& what, const std::string& note = "") {
    std::printf("ACCEPTANCE %02d %s  %s%s%s\n", idx, ok ? "PASS" : "FAIL", what.c_str(),
                note.empty() ? "" : "  -- ", note.c_str());
    if (!ok) ++failures;
}

SampleConfig full_cfg() {
    SampleConfig cfg;
    cfg.points = 100;
    cfg.seed = 42;
    return cfg;
}

const CheckReportEntry* find(const VerificationReport& rep, const std::string& id) {
    for (const auto& c : rep.checks)
        if (c.id == id) return &c;
    return nullptr;
}

bool suite_passes(const VerificationReport& rep, double residual_cap = -1.0) {
    if (!rep.all_passed()) return false;
    if (residual_cap > 0.0)
        for (const auto& c : rep.checks)
            if (c.has_stats && c.max_residual > residual_cap) return false;
    return true;
}

// frozen regression floors, measured once on the default sample
constexpr double kProductCubicFloor = 5e-2;
constexpr double kProductInv01Floor = 1e-1;
constexpr double kProductInv02Floor = 1e-1;
constexpr double kDcFloor = 1e-1;

std::string strip_volatile(std::string json) {
    json = std::regex_replace(json, std::regex("\"wall_ms\": [0-9.e+-]+"), "\"wall_ms\": 0");
    json = std::regex_replace(json, std::regex("\"threads\": [0-9]+"), "\"threads\": 0");
    return json;
}

void criterion_1() {
    const auto g = flat_hyperkahler(1);
    const auto rep = run_suite(g, "hkt", full_cfg());
    bool ok = suite_passes(rep, 1e-10);
    double cnorm = 0.0;
    for (const auto& x : testsupport::seeded_points(4, 10))
        cnorm = std::max(cnorm, bismut_torsion_form(g, x).norm_inf());
    ok = ok && cnorm <= 1e-10;
    report(1, ok, "flat baseline: hkt suite within 1e-10 and c identically zero");
}

void criterion_2() {
    bool ok = true;
    std::string note;
    for (int n : {1, 2}) {
        const auto g = hopf_lchk_cover(n);
        const auto rep = run_suite(g, "lchk", full_cfg());
        ok = ok && suite_passes(rep);
        const Point x = testsupport::seeded_points(4 * n, 1)[0];
        const double kappa = g.metric.eval(x, 0).at(0, 0).value().real() * x.radius_sq();
        if (std::abs(kappa - 4.0) > 1e-9) ok = false;
        if (n == 2) note = "measured homothety kappa = " + std::to_string(kappa);
    }
    report(2, ok, "conformal Hopf cover: lchk suite at 100 points, unit Lee form", note);
}

void criterion_3() {
    bool ok = true;
    std::string note;
    for (int n : {1, 2}) {
        const auto rep = run_suite(hopf_hkt(n), "hkt", full_cfg());
        ok = ok && suite_passes(rep);
    }
    const auto sym = run_check(hopf_hkt(2), "SYM-05", full_cfg());
    const auto* e = find(sym, "SYM-05");
    ok = ok && e && e->verdict == Verdict::Pass;
    if (e) note = e->detail;
    report(3, ok, "sheared Hopf metric passes the hkt suite; unique potential-form sign", note);
}

void criterion_4() {
    const auto rep = run_suite(hopf_hkt(2), "symmetry", full_cfg());
    bool ok = suite_passes(rep);
    const auto* e = find(rep, "SYM-06");
    std::string note = e ? e->detail : "";
    report(4, ok, "symmetry suite on hopf-hkt:n=2 (parallel field, Killing, rotations, algebra fit)",
           note);
}

void criterion_5() {
    // bisection oracle for the normalization cubic
    auto bisect = [](int m) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            ((mid * mid * mid + (2.0 * m - 1.0) * mid - 1.0) > 0.0 ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const bool lambda_ok = std::abs(normalized_lambda(1) - 0.6823278038) < 1e-9 &&
                           std::abs(normalized_lambda(1) - bisect(1)) < 1e-12 &&
                           std::abs(normalized_lambda(2) - bisect(2)) < 1e-12;
    bool cubic_ok = true;
    std::string tau_note;
    for (int n : {1, 2}) {
        const auto rep = run_suite(hopf_hkt(n), "cubic", full_cfg());
        for (const auto& c : rep.checks) {
            if (c.verdict != Verdict::Pass) cubic_ok = false;
            if (c.id == "CUBIC-02" && !c.detail.empty()) tau_note = c.detail;
        }
    }
    report(5, lambda_ok && cubic_ok,
           "cubic torsion: CUBIC-01..05 on hopf-hkt:n=1,2 and the lambda oracle",
           (lambda_ok ? "lambda oracle ok; " : "") + tau_note);
}

void criterion_6() {
    const auto p = product_hkt(hopf_hkt(1), hopf_hkt(1));
    const auto cfg = full_cfg();
    bool ok = suite_passes(run_suite(p, "hkt", cfg));
    ok = ok && suite_passes(run_suite(p, "symmetry", cfg));
    const auto cubic = run_check(p, "CUBIC-01", cfg);
    const auto* c1 = find(cubic, "CUBIC-01");
    ok = ok && c1 && c1->verdict == Verdict::Fail && c1->max_residual >= kProductCubicFloor;
    const auto inv = run_suite(p, "inverse", cfg);
    const auto* i1 = find(inv, "INV-01");
    const auto* i2 = find(inv, "INV-02");
    ok = ok && i1 && i1->verdict == Verdict::Fail && i1->max_residual >= kProductInv01Floor;
    ok = ok && i2 && i2->verdict == Verdict::Fail && i2->max_residual >= kProductInv02Floor;
    report(6, ok, "product counterexample: hkt+symmetry pass, cubic type fails above the floor, "
                  "inverse checks fail together");
}

void criterion_7() {
    const auto probes = testsupport::seeded_points(4, 3);
    const auto lchk = hopf_lchk_cover(1);
    const auto fwd = hkt_from_lchk(lchk, probes);
    const auto back = lchk_from_hkt(fwd, probes);
    const auto fwd2 = hkt_from_lchk(back, probes);
    double worst = 0.0;
    for (const auto& x : testsupport::seeded_points(4, 20)) {
        const JetMat a = lchk.metric.eval(x, 0);
        const JetMat b = back.metric.eval(x, 0);
        const JetMat c = fwd.metric.eval(x, 0);
        const JetMat e = fwd2.metric.eval(x, 0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                worst = std::max(worst, std::abs(a.at(i, j).value() - b.at(i, j).value()));
                worst = std::max(worst, std::abs(c.at(i, j).value() - e.at(i, j).value()));
            }
    }
    report(7, worst <= 1e-12, "shear and inverse shear cancel on metric coefficients",
           "worst gap " + std::to_string(worst));
}

void criterion_8() {
    const auto rep = run_check(hopf_hkt(2), "INV-03", full_cfg());
    const auto* e = find(rep, "INV-03");
    bool ok = e && e->verdict == Verdict::Pass && e->max_residual <= 1e-8;
    // the check enforces the pointwise floor itself; its detail echoes it
    ok = ok && e && e->detail.find("floor") != std::string::npos;
    report(8, ok,
           "non-strongness on hopf-hkt:n=2: dc matches its expansion, vanishes on the span of V, "
           "and stays above the floor",
           e ? e->detail : "");
    (void)kDcFloor;
}

void criterion_9() {
    // central finite differences against the jet derivatives of the
    // geometry base fields entering the criteria above
    const auto hkt = hopf_hkt(2);
    const auto lchk = hopf_lchk_cover(2);
    const auto pts = testsupport::seeded_points(8, 10, 1234);
    bool ok = true;
    int pair = 0;
    for (const auto& x : pts) {
        const int which = pair % 5;
        testsupport::Fn value;
        std::function<Jet(const Point&, int)> jet;
        switch (which) {
            case 0:
                value = [&](const Point& p) { return hkt.metric.eval(p, 0).at(0, 0).value(); };
                jet = [&](const Point& p, int o) { return hkt.metric.eval(p, o).at(0, 0); };
                break;
            case 1:
                value = [&](const Point& p) { return hkt.potential_mu->eval(p, 0).value(); };
                jet = [&](const Point& p, int o) { return hkt.potential_mu->eval(p, o); };
                break;
            case 2:
                value = [&](const Point& p) { return lchk.lee_form->eval(p, 0).coeff(2).value(); };
                jet = [&](const Point& p, int o) { return lchk.lee_form->eval(p, o).coeff(2); };
                break;
            case 3:
                value = [&](const Point& p) {
                    return fundamental_form(hkt, 1).eval(p, 0).coeff(3).value();
                };
                jet = [&](const Point& p, int o) {
                    return fundamental_form(hkt, 1).eval(p, o).coeff(3);
                };
                break;
            default:
                value = [&](const Point& p) { return lchk.metric.eval(p, 0).at(5, 5).value(); };
                jet = [&](const Point& p, int o) { return lchk.metric.eval(p, o).at(5, 5); };
        }
        const Jet j = jet(x, 2);
        for (int i = 0; i < 8; i += 3) {
            ok = ok && testsupport::rel_err(j.grad(i), testsupport::fd_grad(value, x, i)) < 1e-5;
            ok = ok && testsupport::rel_err(j.hess(i, i), testsupport::fd_hess(value, x, i, i)) < 1e-5;
        }
        ++pair;
    }
    report(9, ok, "jet derivatives of the geometry fields agree with central finite differences");
}

void criterion_10() {
    SampleConfig cfg = full_cfg();
    cfg.threads = 1;
    const auto a = run_suite(hopf_hkt(2), "paper-all", cfg);
    const auto b = run_suite(hopf_hkt(2), "paper-all", cfg);
    cfg.threads = 8;
    const auto c = run_suite(hopf_hkt(2), "paper-all", cfg);
    const auto d = run_suite(hopf_hkt(2), "paper-all", cfg);
    const std::string ja = strip_volatile(a.to_json());
    const bool ok = ja == strip_volatile(b.to_json()) && ja == strip_volatile(c.to_json()) &&
                    strip_volatile(c.to_json()) == strip_volatile(d.to_json());
    char note[64];
    std::snprintf(note, sizeof(note), "paper-all wall: %.0f ms at 1 thread", a.wall_ms);
    report(10, ok, "byte-identical reports across repeats and thread counts", note);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
