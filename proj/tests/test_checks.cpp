#include <doctest.h>

#include "hktlab/checks.hpp"
#include "hktlab/zoo.hpp"

#include <regex>

using namespace hktlab;

namespace {

SampleConfig quick(int points = 5) {
    SampleConfig cfg;
    cfg.points = points;
    return cfg;
}

const CheckReportEntry& entry(const VerificationReport& rep, const std::string& id) {
    for (const auto& c : rep.checks)
        if (c.id == id) return c;
    REQUIRE(false);
    return rep.checks.front();
}

std::string strip_wall(std::string json) {
    return std::regex_replace(json, std::regex("\"wall_ms\": [0-9.e+-]+"), "\"wall_ms\": 0");
}

} // namespace

TEST_CASE("registry lists unique ids with anchors") {
    const auto infos = list_checks();
    CHECK(infos.size() >= 22);
    for (size_t i = 0; i < infos.size(); ++i) {
        CHECK(!infos[i].anchor.empty());
        for (size_t j = i + 1; j < infos.size(); ++j) CHECK(infos[i].id != infos[j].id);
    }
}

TEST_CASE("unknown ids and suites are config errors") {
    const auto g = flat_hyperkahler(1);
    CHECK_THROWS_AS(run_check(g, "HKT-99", quick()), ConfigError);
    CHECK_THROWS_AS(run_suite(g, "everything", quick()), ConfigError);
}

TEST_CASE("precondition skips are distinct from failures") {
    const auto rep = run_suite(flat_hyperkahler(1), "lchk", quick());
    CHECK(entry(rep, "LCHK-01").verdict == Verdict::Pass);
    CHECK(entry(rep, "LCHK-03").verdict == Verdict::PreconditionFailed);
    CHECK(rep.all_passed()); // skips do not fail the run
}

TEST_CASE("flat geometry passes the vanishing-torsion cubic check") {
    const auto rep = run_check(flat_hyperkahler(1), "CUBIC-01", quick());
    CHECK(entry(rep, "CUBIC-01").verdict == Verdict::Pass);
    CHECK(entry(rep, "CUBIC-01").max_residual == 0.0);
}

TEST_CASE("product geometry fails the cubic-type check by a margin") {
    const auto p = product_hkt(hopf_hkt(1), hopf_hkt(1));
    const auto rep = run_check(p, "CUBIC-01", quick());
    const auto& e = entry(rep, "CUBIC-01");
    CHECK(e.verdict == Verdict::Fail);
    CHECK(e.max_residual > 1e-2);
}

TEST_CASE("inverse checks fail together on the product") {
    const auto p = product_hkt(hopf_hkt(1), hopf_hkt(1));
    const auto rep = run_suite(p, "inverse", quick());
    CHECK(entry(rep, "INV-01").verdict == Verdict::Fail);
    CHECK(entry(rep, "INV-02").verdict == Verdict::Fail);
    CHECK(entry(rep, "INV-01").max_residual > 5e-2);
    CHECK(entry(rep, "INV-02").max_residual > 5e-2);
    // the strongness check does not apply off the cubic class
    CHECK(entry(rep, "INV-03").verdict == Verdict::PreconditionFailed);
}

TEST_CASE("inverse checks pass together on the sheared Hopf metric") {
    const auto rep = run_suite(hopf_hkt(1), "inverse", quick());
    CHECK(entry(rep, "INV-01").verdict == Verdict::Pass);
    CHECK(entry(rep, "INV-02").verdict == Verdict::Pass);
    CHECK(entry(rep, "INV-03").verdict == Verdict::Pass);
}

TEST_CASE("json reports are deterministic modulo wall time") {
    const auto g = hopf_hkt(1);
    SampleConfig cfg = quick(8);
    const auto a = run_suite(g, "hkt", cfg);
    const auto b = run_suite(g, "hkt", cfg);
    CHECK(strip_wall(a.to_json()) == strip_wall(b.to_json()));
    SampleConfig threaded = cfg;
    threaded.threads = 4;
    const auto c = run_suite(g, "hkt", threaded);
    // thread count is echoed in the config block; strip it for comparison
    auto strip_threads = [](std::string s) {
        return std::regex_replace(s, std::regex("\"threads\": [0-9]+"), "\"threads\": 0");
    };
    CHECK(strip_threads(strip_wall(a.to_json())) == strip_threads(strip_wall(c.to_json())));
}

TEST_CASE("tolerance monotonicity") {
    const auto g = hopf_hkt(1);
    SampleConfig strict = quick(5);
    strict.tolerance = 1e-10;
    SampleConfig loose = quick(5);
    loose.tolerance = 1e-4;
    const auto a = run_check(g, "HKT-01", strict);
    const auto b = run_check(g, "HKT-01", loose);
    CHECK(entry(a, "HKT-01").verdict == Verdict::Pass);
    CHECK(entry(b, "HKT-01").verdict == Verdict::Pass);
    // residual itself does not depend on the tolerance
    CHECK(entry(a, "HKT-01").max_residual == entry(b, "HKT-01").max_residual);
}

TEST_CASE("report carries the required fields") {
    const auto rep = run_check(flat_hyperkahler(1), "HH-01", quick(3));
    const std::string json = rep.to_json();
    for (const char* key : {"\"geometry\"", "\"config\"", "\"checks\"", "\"id\"", "\"anchor\"",
                            "\"verdict\"", "\"max_residual\"", "\"mean_residual\"",
                            "\"worst_point\"", "\"tolerance\"", "\"wall_ms\""})
        CHECK(json.find(key) != std::string::npos);
    CHECK(rep.checks.front().worst_point.size() == 4);
}

TEST_CASE("sign resolution reports the potential form") {
    const auto rep = run_check(hopf_hkt(1), "SYM-05", quick());
    const auto& e = entry(rep, "SYM-05");
    CHECK(e.verdict == Verdict::Pass);
    CHECK(e.detail.find("-2*theta_hat") != std::string::npos);
}

TEST_CASE("insufficient jet order cap is a config error") {
    SampleConfig cfg = quick(3);
    cfg.jet_order = 1;
    CHECK_THROWS_AS(run_check(flat_hyperkahler(1), "HKT-02", cfg), ConfigError);
}

TEST_CASE("the full registry runs on the paper-all suite") {
    const auto rep = run_suite(hopf_hkt(1), "paper-all", quick(4));
    CHECK(rep.checks.size() == list_checks().size());
    // the two tau-coefficient checks carry the known coefficient mismatch
    for (const auto& c : rep.checks) {
        if (c.id == "CUBIC-02" || c.id == "CUBIC-03") CHECK(c.verdict == Verdict::Fail);
        else CHECK(c.verdict != Verdict::Fail);
    }
}
