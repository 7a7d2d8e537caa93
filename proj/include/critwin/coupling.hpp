#pragma once

// Path-wise joint construction of a killed BRW and the graph component of a
// vertex. The BRW is grown and classified first; per-(real particle, target
// vertex) uniforms are then reconstructed conditionally on the offspring
// indicators (Unif[0, q] when an offspring landed in the target cell,
// Unif(q, 1] otherwise), and graph edges are decided from those uniforms with
// the exploration-order precedence rule. Pairs whose cells hold no real
// particle get fresh uniforms.
//
// On the resulting object the inclusion between BFS balls of the component
// and generation prefixes of the real-particle projection is testable
// realization by realization: lower embedding gives projection inside
// component, upper embedding gives component inside projection.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "critwin/brw.hpp"
#include "critwin/model.hpp"

namespace critwin {

struct CoupledRealization {
    BrwTree tree;
    EmbeddingKind mode = EmbeddingKind::lower;
    std::int64_t v = 1, m = 1, n = 1;
    // real particles projected to vertices, with their generations
    std::vector<std::pair<std::int64_t, std::int32_t>> projection;
    // component of v in the induced subgraph on [m, n], with BFS distances
    std::unordered_map<std::int64_t, std::int32_t> bfs_depth;
    std::int64_t component_size = 0;
    // audit counters
    std::int64_t inclusion_violations = 0;
    std::int64_t kernel_violations = 0;
    bool censored = false;
};

struct CouplingCaps {
    std::int64_t max_particles = 2000000;
};

// Requires beta in (0, 1/2]. Lower mode needs m <= v <= n; upper mode needs
// v <= n and m in [1 + 1{v>=2}, v].
CoupledRealization coupled_realization(double gamma, double beta, Kernel kernel, std::int64_t v,
                                       std::int64_t m, std::int64_t n, EmbeddingKind mode,
                                       std::uint64_t seed, const CouplingCaps& caps = {});

inline CoupledRealization coupled_realization(const ModelParams& params, std::int64_t v,
                                              std::int64_t m, std::int64_t n, EmbeddingKind mode,
                                              std::uint64_t seed, const CouplingCaps& caps = {}) {
    const ResolvedParams r = resolve(params);
    return coupled_realization(r.gamma, r.beta, r.kernel, v, m, n, mode, seed, caps);
}

}  // namespace critwin
