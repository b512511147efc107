#include "hktlab/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace hktlab {

using Json = nlohmann::ordered_json;

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::PreconditionFailed: return "precondition-failed";
    }
    return "?";
}

bool VerificationReport::all_passed() const {
    for (const auto& c : checks)
        if (c.failed()) return false;
    return true;
}

std::string VerificationReport::to_json() const {
    Json j;
    j["geometry"] = geometry;
    Json cfg;
    cfg["scope"] = scope;
    cfg["points"] = config.points;
    cfg["seed"] = config.seed;
    cfg["box"] = Json::array({config.box_low, config.box_high});
    if (config.tolerance) cfg["tolerance"] = *config.tolerance;
    else cfg["tolerance"] = nullptr;
    cfg["jet_order"] = config.jet_order;
    cfg["threads"] = config.threads;
    j["config"] = cfg;
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json e;
        e["id"] = c.id;
        e["anchor"] = c.anchor;
        e["verdict"] = verdict_name(c.verdict);
        if (c.has_stats) {
            e["max_residual"] = c.max_residual;
            e["mean_residual"] = c.mean_residual;
            e["worst_point"] = c.worst_point;
        } else {
            e["max_residual"] = nullptr;
            e["mean_residual"] = nullptr;
            e["worst_point"] = nullptr;
        }
        e["tolerance"] = c.tolerance;
        if (!c.detail.empty()) e["detail"] = c.detail;
        arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    j["wall_ms"] = wall_ms;
    return j.dump(2) + "\n";
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << "geometry " << geometry << "  (" << scope << ", points=" << config.points
       << ", seed=" << config.seed << ")\n";
    char line[256];
    for (const auto& c : checks) {
        if (c.has_stats)
            std::snprintf(line, sizeof(line), "%-9s %-20s max %-12.3e mean %-12.3e tol %-9.1e",
                          c.id.c_str(), verdict_name(c.verdict), c.max_residual, c.mean_residual,
                          c.tolerance);
        else
            std::snprintf(line, sizeof(line), "%-9s %-20s max %-12s mean %-12s tol %-9.1e",
                          c.id.c_str(), verdict_name(c.verdict), "-", "-", c.tolerance);
        os << line;
        if (!c.detail.empty()) os << "  " << c.detail;
        os << "\n";
    }
    os << (all_passed() ? "ALL PASS" : "FAILURES PRESENT") << "  (" << wall_ms << " ms)\n";
    return os.str();
}

} // namespace hktlab
