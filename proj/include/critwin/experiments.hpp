#pragma once

// Experiment orchestration: window scans, tail studies, susceptibility runs,
// local-limit comparisons, coupling audits, and the closed-form verification
// suite. Grid cells x seeds are dispatched to a worker pool; every stream is
// keyed by (seed, cell, rep), so results are independent of thread count and
// merge order. Rows are sorted before writing.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "critwin/config.hpp"
#include "critwin/output.hpp"

namespace critwin {

std::vector<ResultRow> run_window_scan(const ExperimentConfig& cfg);
std::vector<ResultRow> run_tail(const ExperimentConfig& cfg);
std::vector<ResultRow> run_susceptibility(const ExperimentConfig& cfg);
std::vector<ResultRow> run_local_limit(const ExperimentConfig& cfg);
std::vector<ResultRow> run_coupling_audit(const ExperimentConfig& cfg);

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    // Mutation-test hook: additive corruption applied to the Si evaluations
    // used inside the suite. Nonzero values must make at least one check fail.
    double si_corruption = 0.0;
    std::int64_t mc_paths = 1000000;
    std::int64_t brw_reps = 100000;
    std::uint64_t seed = 20240901;
};

std::vector<VerifyCheck> run_verify_checks(const VerifyOptions& opts);
std::vector<ResultRow> run_verify(const ExperimentConfig& cfg, const VerifyOptions& opts);

// Dispatch count tasks over a pool of `threads` workers (0 = hardware).
void parallel_tasks(int threads, std::int64_t count,
                    const std::function<void(std::int64_t)>& fn);

}  // namespace critwin
