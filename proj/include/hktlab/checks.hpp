#pragma once

#include "hktlab/geometry.hpp"
#include "hktlab/report.hpp"

namespace hktlab {

// One registry entry: a named identity bound to a residual computation.
struct CheckInfo {
    std::string id;
    std::string anchor; // the identity the residual measures, in ASCII math
    double default_tolerance;
    std::vector<std::string> suites;
};

std::vector<CheckInfo> list_checks();
std::vector<std::string> list_suites();

VerificationReport run_check(const HypercomplexGeometry& g, const std::string& id,
                             const SampleConfig& cfg);
VerificationReport run_suite(const HypercomplexGeometry& g, const std::string& suite,
                             const SampleConfig& cfg);

} // namespace hktlab
