#pragma once

// Many-to-one cross-check: the same tree functional estimated on the BRW side
// (particle counts) and on the spine side (weighted Laplacian-walk sums).

#include <cstdint>

namespace critwin {

struct ManyToOneResult {
    double brw_mean = 0.0, brw_se = 0.0;
    double rw_mean = 0.0, rw_se = 0.0;
    bool within(double n_se) const;
};

// F = indicator of staying inside [0, K]; both sides estimate
// E_x[ sum_{|t| <= max_gen} F ]. The RW side evaluates
// e^{-x/2} E_{2 bc x}[ sum_{k<=max_gen} (beta/bc)^k e^{S_k/(4 bc)} 1{tau > k} ].
ManyToOneResult many_to_one_check(double gamma, double beta, double K, double x,
                                  std::int32_t max_gen, std::int64_t reps, std::uint64_t seed);

}  // namespace critwin
