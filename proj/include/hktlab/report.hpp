#pragma once

#include <string>
#include <vector>

#include "hktlab/sampling.hpp"

namespace hktlab {

enum class Verdict { Pass, Fail, PreconditionFailed };

const char* verdict_name(Verdict v);

struct CheckReportEntry {
    std::string id;
    std::string anchor;
    Verdict verdict = Verdict::Pass;
    bool has_stats = false;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    std::vector<double> worst_point;
    double tolerance = 0.0;
    std::string detail;

    bool failed() const { return verdict == Verdict::Fail; }
};

struct VerificationReport {
    std::string geometry;
    std::string scope; // "suite:<name>" or "check:<id>"
    SampleConfig config;
    std::vector<CheckReportEntry> checks;
    double wall_ms = 0.0;

    bool all_passed() const;
    // deterministic except for the wall_ms field
    std::string to_json() const;
    std::string to_text() const;
};

} // namespace hktlab
