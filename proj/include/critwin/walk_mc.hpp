#pragma once

// Monte Carlo oracle for the Laplacian random walk killed outside [0, L].
// One simulation pass accumulates every requested functional along the same
// paths; each closed form in analytics.hpp has its estimator here.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "critwin/analytics.hpp"
#include "critwin/rng.hpp"
#include "critwin/stats.hpp"

namespace critwin::rw {

struct WalkMcRequest {
    double x0 = 0.0;  // start position in [0, L]
    double L = 1.0;   // interval [0, L]
    double rho = 0.0;
    std::int64_t reps = 100000;

    bool want_pgf = false;              // (1+rho)^tau
    std::vector<double> h_b;            // b values for H_b^+ and H_b^-
    bool want_resolvent = false;        // sum_{l=1}^{tau-1} (1+rho)^l 1{S_l in [a,b]}
    bool want_f_ab = false;             // sum_{n=0}^{tau-1} (1+rho)^n Q_{a,b}(S_n)
    double cell_a = 0.0, cell_b = 0.0;  // cell for resolvent / F
    std::int64_t max_steps = 100000000;  // per-path guard; counts toward nothing if hit
};

struct RwPathStats {
    double x0 = 0.0, L = 0.0, rho = 0.0;
    MeanVar tau;        // hitting time of [0,L]^c; tau >= 1 in every path
    MeanVar overshoot;  // |S_tau - boundary|, positive
    MeanVar exit_right;  // indicator of exit above L
    MeanVar pgf;
    std::vector<MeanVar> h_plus;   // aligned with request.h_b
    std::vector<MeanVar> h_minus;  // aligned with request.h_b
    MeanVar resolvent;
    MeanVar f_ab;
    std::int64_t truncated_paths = 0;  // paths cut by max_steps (excluded from pgf/H)
};

// Simulates S_k = x0 + Laplace(1) steps until exit; E[step]=0, Var[step]=2.
inline RwPathStats laplace_walk_mc(const WalkMcRequest& req, SplitMix64& rng) {
    if (!(req.L > 0.0)) throw std::invalid_argument("laplace_walk_mc: L must be > 0");
    if (!(req.x0 >= 0.0 && req.x0 <= req.L))
        throw std::invalid_argument("laplace_walk_mc: x0 must lie in [0, L]");
    if (req.reps < 1) throw std::invalid_argument("laplace_walk_mc: reps >= 1");

    RwPathStats out;
    out.x0 = req.x0;
    out.L = req.L;
    out.rho = req.rho;
    out.h_plus.resize(req.h_b.size());
    out.h_minus.resize(req.h_b.size());
    const double s = 1.0 + req.rho;
    std::vector<double> acc_hp(req.h_b.size()), acc_hm(req.h_b.size());

    for (std::int64_t rep = 0; rep < req.reps; ++rep) {
        double pos = req.x0;
        double weight = 1.0;  // (1+rho)^k
        double acc_res = 0.0, acc_f = 0.0;
        std::fill(acc_hp.begin(), acc_hp.end(), 0.0);
        std::fill(acc_hm.begin(), acc_hm.end(), 0.0);
        std::int64_t k = 0;
        bool truncated = false;

        for (;;) {
            // accumulate step k (particle still inside)
            if (!req.h_b.empty()) {
                for (std::size_t bi = 0; bi < req.h_b.size(); ++bi) {
                    const double e = std::exp(req.h_b[bi] * pos);
                    acc_hp[bi] += weight * e;
                    acc_hm[bi] += weight / e;
                }
            }
            if (req.want_f_ab) acc_f += weight * q_ab(req.cell_a, req.cell_b, pos);
            if (req.want_resolvent && k >= 1 && pos >= req.cell_a && pos <= req.cell_b)
                acc_res += weight;

            pos += rng.laplace();
            ++k;
            weight *= s;
            if (pos < 0.0 || pos > req.L) break;
            if (k >= req.max_steps) {
                truncated = true;
                break;
            }
        }

        if (truncated) {
            ++out.truncated_paths;
            continue;
        }
        out.tau.add(static_cast<double>(k));
        out.overshoot.add(pos > req.L ? pos - req.L : -pos);
        out.exit_right.add(pos > req.L ? 1.0 : 0.0);
        if (req.want_pgf) out.pgf.add(weight);  // weight == (1+rho)^tau here
        for (std::size_t bi = 0; bi < req.h_b.size(); ++bi) {
            out.h_plus[bi].add(acc_hp[bi]);
            out.h_minus[bi].add(acc_hm[bi]);
        }
        if (req.want_resolvent) out.resolvent.add(acc_res);
        if (req.want_f_ab) out.f_ab.add(acc_f);
    }
    return out;
}

}  // namespace critwin::rw
