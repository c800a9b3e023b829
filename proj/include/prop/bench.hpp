#pragma once

// Benchmark drivers behind the CLI: error-vs-oracle sweeps with CSV output
// and run manifests, method comparison frontiers, and the validation suite.

#include <string>
#include <vector>

#include "prop/config.hpp"

namespace prop {

struct SummaryRow {
    std::string label;    // sweep point label (dt=..., or area/phi)
    double dt = 0.0;
    int n_t = 0;
    int m_k = 0;
    int n_cheby = 0;
    double eps_sol_max = 0.0;
    double eps_norm_max = 0.0;
    int k_max = 0;
    double wall_seconds = 0.0;
    bool failed = false;
    std::string fail_reason;
};

struct RunResult {
    std::vector<SummaryRow> summary;
    std::vector<std::string> files; // paths written
};

// `prop run`: one CSV per sweep point plus summary CSV and manifest.
RunResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                         int threads = 1);

// `prop compare`: per-method error-vs-walltime frontier over the dt sweep.
RunResult compare_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                             int threads = 1);

// `prop validate`: module invariant checks with machine-readable rows.
enum class FaultInjection { None, MonomialTable };

struct ValidationRow {
    std::string name;
    double tolerance = 0.0;
    double achieved = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

ValidationReport validate(unsigned long long seed = 1,
                          FaultInjection fault = FaultInjection::None);

} // namespace prop
