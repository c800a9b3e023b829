// Command-line front end: run / compare / validate.
// Exit codes: 0 success, 2 config error, 3 numerical failure.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "prop/bench.hpp"
#include "prop/errors.hpp"
#include "prop/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Chebyshev propagator benchmarks for driven quantum systems"};
    app.set_version_flag("--version", prop::kVersion);

    std::string out_dir = "out";
    int threads = 1;
    unsigned long long seed = 1;

    std::string run_config, compare_config;
    auto* run_cmd = app.add_subcommand("run", "execute an experiment config");
    run_cmd->add_option("config", run_config, "config file")->required();
    run_cmd->add_option("--out", out_dir, "output directory");
    run_cmd->add_option("--threads", threads, "parallel sweep points");
    run_cmd->add_option("--seed", seed, "seed for randomized property tests");

    auto* cmp_cmd = app.add_subcommand("compare", "error-vs-walltime frontier over methods");
    cmp_cmd->add_option("config", compare_config, "config file")->required();
    cmp_cmd->add_option("--out", out_dir, "output directory");
    cmp_cmd->add_option("--threads", threads, "parallel sweep points");
    cmp_cmd->add_option("--seed", seed, "seed for randomized property tests");

    bool fault_monomial = false;
    auto* val_cmd = app.add_subcommand("validate", "run the module invariant suite");
    val_cmd->add_option("--seed", seed, "seed for randomized property tests");
    val_cmd->add_flag("--inject-fault-monomial-table", fault_monomial)
        ->group(""); // test hook, hidden
    val_cmd->add_option("--out", out_dir, "output directory");

    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            const auto cfg = prop::load_config(run_config);
            const auto res = prop::run_experiment(cfg, out_dir, threads);
            for (const auto& f : res.files) std::printf("wrote %s\n", f.c_str());
            for (const auto& r : res.summary)
                if (r.failed) {
                    std::fprintf(stderr, "point %s failed: %s\n", r.label.c_str(),
                                 r.fail_reason.c_str());
                    return 3;
                }
            return 0;
        }
        if (*cmp_cmd) {
            const auto cfg = prop::load_config(compare_config, true);
            const auto res = prop::compare_experiment(cfg, out_dir, threads);
            for (const auto& f : res.files) std::printf("wrote %s\n", f.c_str());
            for (const auto& r : res.summary)
                if (r.failed) return 3;
            return 0;
        }
        // validate
        const auto rep = prop::validate(
            seed, fault_monomial ? prop::FaultInjection::MonomialTable
                                 : prop::FaultInjection::None);
        for (const auto& r : rep.rows)
            std::printf("%-32s tol=%.3e achieved=%.3e %s\n", r.name.c_str(), r.tolerance,
                        r.achieved, r.pass ? "PASS" : "FAIL");
        return rep.all_pass() ? 0 : 3;
    } catch (const prop::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const prop::ConvergenceError& e) {
        std::fprintf(stderr, "numerical failure: %s (achieved %.3e)\n", e.what(), e.achieved);
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
