#pragma once

// The gamma-branching random walk killed outside an interval: offspring
// intensity, the two logarithmic vertex embeddings, tree growth with online
// real/colliding/fake classification in the exploration order, and the
// local-limit progeny sampler.
//
// Only offspring inside the kill interval are ever materialized. Killing is
// hereditary (a killed particle takes all descendants with it), so the
// truncation is exact, not approximate.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "critwin/rng.hpp"

namespace critwin {

// Offspring intensity mu_beta(dy) = beta (e^{(1-gamma) y} 1{y<0} + e^{gamma y} 1{y>=0}) dy.
struct OffspringIntensity {
    double gamma = 0.0;  // in [0, 1)
    double beta = 0.25;
};

// Integral of mu_beta over [a, b]; a may be -infinity. Closed form from the
// piecewise exponential antiderivatives; the gamma = 0 right piece integrates
// the constant beta.
double intensity_mass(const OffspringIntensity& mu, double a, double b);

// Poisson number of offspring of a parent at `parent_pos` landing inside
// [kill_lo, kill_hi], positions i.i.d. from the restricted normalized density
// via piecewise-exponential inverse CDF. Returned ascending. kill_lo may be
// -infinity.
std::vector<double> sample_offspring(const OffspringIntensity& mu, double parent_pos,
                                     double kill_lo, double kill_hi, SplitMix64& rng);

enum class EmbeddingKind { lower, upper };

// Logarithmic vertex embeddings on the label range [m, n].
//   lower: x_i = log i,       I_i = [log i, log(i+1)),      kill = [log m, log(n+1))
//   upper: x_i = log(2i-1),   I_1 = {0}, I_i = (log(2i-3), log(2i-1)] for i >= 2,
//          kill = (log(2m-3), log(2n-1)] for m >= 2, [0, log(2n-1)] for m = 1.
// cell() is the inverse map l(x) and satisfies the round trip l(x_i) = i.
struct Embedding {
    EmbeddingKind kind = EmbeddingKind::lower;
    std::int64_t m = 1, n = 1;

    Embedding(EmbeddingKind k, std::int64_t m_, std::int64_t n_);

    double position(std::int64_t i) const;   // x_i
    std::int64_t cell(double x) const;       // l(x); x must lie in the kill interval
    double kill_lo() const { return kill_lo_; }
    double kill_hi() const { return kill_hi_; }
    // Probability-one membership test for the kill interval (interval
    // endpoints are handled per the half-open conventions above).
    bool inside(double x) const;
    // Mass of mu restricted to cell I_j shifted by -parent_pos, i.e. the
    // intensity a parent at parent_pos puts into cell j.
    double cell_mass(const OffspringIntensity& mu, double parent_pos, std::int64_t j) const;

  private:
    double kill_lo_ = 0.0, kill_hi_ = 0.0;
};

enum class ParticleLabel : std::uint8_t { real, colliding, fake_descendant };

struct Particle {
    std::int32_t parent = -1;  // -1 for the root
    std::int32_t generation = 0;
    double position = 0.0;
    ParticleLabel label = ParticleLabel::real;
};

struct BrwTree {
    std::vector<Particle> particles;  // index 0 is the root
    double kill_lo = 0.0, kill_hi = 0.0;
    double root_position = 0.0;
    bool censored = false;  // particle cap was hit; treat statistics as right-censored
    bool labeled = false;   // labels valid (an embedding was supplied)
    std::int64_t progeny() const { return static_cast<std::int64_t>(particles.size()); }
};

struct GrowCaps {
    std::int64_t max_particles = 10000000;
    std::int32_t max_generation = std::numeric_limits<std::int32_t>::max();
};

// Breadth-first growth, processing each generation in the exploration order
// (parent position ascending, then own position ascending). When an embedding
// is supplied, labels are assigned online: the root is real; a particle is
// real iff its parent is real and its cell holds no earlier real particle;
// it is colliding iff its parent is real but the cell is taken; descendants
// of colliding particles are fake_descendant.
BrwTree grow_tree(const OffspringIntensity& mu, double root_pos, double kill_lo, double kill_hi,
                  const Embedding* embedding, const GrowCaps& caps, SplitMix64& rng);

// Recomputes labels of a stored tree; a pure function of positions and
// structure, used to check classification determinism.
void assign_labels(BrwTree& tree, const Embedding& embedding);

struct CollisionCensus {
    std::int64_t real = 0;
    std::int64_t colliding = 0;
    std::int64_t fake_descendant = 0;
    std::unordered_map<std::int64_t, std::int64_t> colliding_per_cell;
    std::int64_t fake_total() const { return colliding + fake_descendant; }
};

CollisionCensus collision_census(const BrwTree& tree, const Embedding& embedding);

struct LocalLimitSample {
    double barrier = 0.0;      // realized X ~ Exp(1)
    std::int64_t progeny = 0;  // T_{(-inf, X]}
    bool censored = false;
};

// Critical local limit: root at 0, kill set (X, infinity) with X ~ Exp(1),
// beta fixed at beta_c(gamma) internally.
LocalLimitSample local_limit_progeny(double gamma, std::int64_t max_particles, SplitMix64& rng);

// Debug dump: one line "id parent gen position label" per particle.
void dump_tree(std::ostream& os, const BrwTree& tree);

}  // namespace critwin
