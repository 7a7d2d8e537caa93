#pragma once

// Flat key-value experiment configuration with a versioned header line.
// Schema (one "key = value" per line, '#' comments):
//
//   critwin-config v1
//   gamma   = 0, 0.3            # list of model exponents
//   n       = 1e4, 1e6          # graph sizes (integers; scientific ok)
//   alpha   = -10, 0, 5         # window coordinates ... OR ...
//   beta    = 0.25              # absolute edge densities (exactly one of alpha/beta)
//   kernel  = polynomial        # or exponential_lower
//   seeds   = 1, 2, 3           # explicit list ...
//   seed_base = 1000            # ... or base + count
//   seed_count = 20
//   k_grid  = 1, 2, 4, ..., 512 # tail thresholds
//   k_trunc = 64                # truncation cap for local-limit comparisons
//   reps    = 100000            # MC replications (local-limit draws, audit count)
//   max_particles = 1000000
//   max_edges = -1              # <0: unlimited
//   time_limit_s = 0            # 0: none; per-cell wall-clock guard
//   mc_paths = 1000000          # verify-suite walk paths

#include <cstdint>
#include <string>
#include <vector>

#include "critwin/model.hpp"

namespace critwin {

struct ExperimentConfig {
    std::string experiment;  // set by the CLI subcommand
    std::vector<double> gamma{0.0};
    std::vector<std::int64_t> n{1000000};
    bool window_mode = true;
    std::vector<double> alpha{0.0};
    std::vector<double> beta;
    Kernel kernel = Kernel::polynomial;
    std::vector<std::uint64_t> seeds{1};
    std::vector<std::int64_t> k_grid{1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
    std::int64_t k_trunc = 64;
    std::int64_t reps = 100000;
    std::int64_t max_particles = 1000000;
    std::int64_t max_edges = -1;
    double time_limit_s = 0.0;
    std::int64_t mc_paths = 1000000;
    std::string out_prefix = "critwin_";
    int threads = 0;  // 0: hardware concurrency
    std::string raw_text;  // config file contents, echoed into the summary

    // Resolvable ModelParams for one grid cell.
    ModelParams cell_params(double g, std::int64_t size, double level) const {
        ModelParams p;
        p.gamma = g;
        p.n = size;
        p.kernel = kernel;
        p.beta_spec = window_mode ? BetaSpec::window(level) : BetaSpec::absolute(level);
        return p;
    }
    const std::vector<double>& levels() const { return window_mode ? alpha : beta; }

    void validate() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace critwin
