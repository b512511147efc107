#include <CLI11.hpp>

#include "hktlab/checks.hpp"
#include "hktlab/zoo.hpp"

#include <cstdio>
#include <iostream>

using namespace hktlab;

int main(int argc, char** argv) {
    CLI::App app{"hktlab - residual checks for hypercomplex geometries with torsion"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "print the check registry");

    auto* run = app.add_subcommand("run", "run a suite or a single check");
    std::string geometry;
    std::string suite = "paper-all";
    std::string check_id;
    std::string format = "text";
    SampleConfig cfg;
    run->add_option("--geometry", geometry,
                    "flat:n=<k> | hopf-lchk:n=<k> | hopf-hkt:n=<k> | product:<spec>,<spec>")
        ->required();
    run->add_option("--suite", suite, "hyperhermitian|hkt|lchk|symmetry|cubic|inverse|paper-all");
    run->add_option("--check", check_id, "run a single check id instead of a suite");
    run->add_option("--points", cfg.points, "sample point count");
    run->add_option("--seed", cfg.seed, "sampler seed");
    double tol = 0.0;
    auto* tol_opt = run->add_option("--tol", tol, "tolerance override for every check");
    run->add_option("--jet-order", cfg.jet_order, "cap on the jet order (<= 3)");
    run->add_option("--threads", cfg.threads, "worker threads over sample points");
    run->add_option("--format", format, "json|text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (list->parsed()) {
            for (const auto& info : list_checks()) {
                std::string suites;
                for (const auto& s : info.suites) suites += (suites.empty() ? "" : ",") + s;
                std::printf("%-9s tol %-8.1e [%s]\n          %s\n", info.id.c_str(),
                            info.default_tolerance, suites.c_str(), info.anchor.c_str());
            }
            return 0;
        }
        if (tol_opt->count() > 0) cfg.tolerance = tol;
        if (format != "json" && format != "text") throw ConfigError("unknown format: " + format);
        const HypercomplexGeometry geom = parse_geometry_spec(geometry);
        const VerificationReport rep = check_id.empty() ? run_suite(geom, suite, cfg)
                                                        : run_check(geom, check_id, cfg);
        std::cout << (format == "json" ? rep.to_json() : rep.to_text());
        return rep.all_passed() ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
