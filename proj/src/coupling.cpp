#include "critwin/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace critwin {

namespace {

constexpr double kIneqSlack = 1e-12;  // FP slack on strict analytic inequalities

// Exploration-order comparison (generation, parent position, own position, id).
struct PrecLess {
    const BrwTree* tree;
    bool operator()(std::int32_t a, std::int32_t b) const {
        const Particle& pa = tree->particles[static_cast<std::size_t>(a)];
        const Particle& pb = tree->particles[static_cast<std::size_t>(b)];
        if (pa.generation != pb.generation) return pa.generation < pb.generation;
        const double xa = pa.parent >= 0 ? (*tree).particles[pa.parent].position : -1.0;
        const double xb = pb.parent >= 0 ? (*tree).particles[pb.parent].position : -1.0;
        if (xa != xb) return xa < xb;
        if (pa.position != pb.position) return pa.position < pb.position;
        return a < b;
    }
};

}  // namespace

CoupledRealization coupled_realization(double gamma, double beta, Kernel kernel, std::int64_t v,
                                       std::int64_t m, std::int64_t n, EmbeddingKind mode,
                                       std::uint64_t seed, const CouplingCaps& caps) {
    if (!(beta > 0.0 && beta <= 0.5))
        throw std::invalid_argument("coupled_realization: beta must lie in (0, 1/2]");
    if (mode == EmbeddingKind::lower) {
        if (!(m >= 1 && m <= v && v <= n))
            throw std::invalid_argument("coupled_realization: lower mode needs m <= v <= n");
    } else {
        const std::int64_t m_min = v >= 2 ? 2 : 1;
        if (!(v >= 1 && v <= n && m >= m_min && m <= v))
            throw std::invalid_argument(
                "coupled_realization: upper mode needs m in [1 + 1{v>=2}, v]");
    }

    CoupledRealization out;
    out.mode = mode;
    out.v = v;
    out.m = m;
    out.n = n;

    const Embedding emb(mode, m, n);
    const OffspringIntensity mu{gamma, beta};
    SplitMix64 rng(key_combine(seed, 0xC0uLL));
    GrowCaps gcaps;
    gcaps.max_particles = caps.max_particles;
    out.tree = grow_tree(mu, emb.position(v), emb.kill_lo(), emb.kill_hi(), &emb, gcaps, rng);
    out.censored = out.tree.censored;
    const BrwTree& tree = out.tree;

    // Real particle per cell (at most one by construction) and, per real
    // particle, the set of cells its offspring occupy.
    std::unordered_map<std::int64_t, std::int32_t> real_in_cell;
    std::unordered_map<std::int32_t, std::unordered_set<std::int64_t>> child_cells;
    for (std::size_t t = 0; t < tree.particles.size(); ++t) {
        const Particle& p = tree.particles[t];
        if (p.label == ParticleLabel::real) {
            const std::int64_t c = emb.cell(p.position);
            real_in_cell.emplace(c, static_cast<std::int32_t>(t));
            out.projection.emplace_back(c, p.generation);
        }
        if (p.parent >= 0 && tree.particles[p.parent].label == ParticleLabel::real)
            child_cells[p.parent].insert(emb.cell(p.position));
    }

    // Decide all edges incident to a real-occupied cell. The precedence rule:
    // the pair {a, j} is decided by the exploration-order-smallest real
    // particle among its endpoints.
    const std::int64_t count = n - m + 1;
    std::vector<std::vector<std::int64_t>> adj(static_cast<std::size_t>(count));
    const PrecLess prec{&tree};
    const auto vertex_slot = [m](std::int64_t w) { return static_cast<std::size_t>(w - m); };

    std::vector<std::pair<std::int64_t, std::int32_t>> real_cells(real_in_cell.begin(),
                                                                  real_in_cell.end());
    std::sort(real_cells.begin(), real_cells.end());  // deterministic rng consumption order
    for (const auto& [a, s] : real_cells) {
        const double xs = tree.particles[static_cast<std::size_t>(s)].position;
        const auto cc_it = child_cells.find(s);
        for (std::int64_t j = m; j <= n; ++j) {
            if (j == a) continue;
            const auto other = real_in_cell.find(j);
            if (other != real_in_cell.end() && prec(other->second, s)) continue;  // decided there
            const double mass = emb.cell_mass(mu, xs, j);
            const double q = -std::expm1(-mass);
            const double p = connection_probability(std::min(a, j), std::max(a, j), gamma, beta,
                                                    kernel);
            // one-step kernel inequality audit (upper embedding claims j >= 2 only)
            if (mode == EmbeddingKind::lower) {
                if (q > p + kIneqSlack * (1.0 + p)) ++out.kernel_violations;
            } else if (j >= 2) {
                if (q < p - kIneqSlack * (1.0 + p)) ++out.kernel_violations;
            }
            const bool has_child = cc_it != child_cells.end() && cc_it->second.count(j) > 0;
            const double u01 = rng.u01();
            const double u = has_child ? q * u01 : q + (1.0 - q) * u01;
            if (u <= p) {
                adj[vertex_slot(a)].push_back(j);
                adj[vertex_slot(j)].push_back(a);
            }
        }
    }

    // BFS over [m, n]. Pairs between two cells without real particles are
    // decided lazily with fresh pair-keyed uniforms (hit at most from both
    // endpoints; the keyed hash makes the two queries agree).
    const std::uint64_t fresh_key = key_combine(seed, 0xF7uLL);
    std::deque<std::int64_t> queue;
    out.bfs_depth.clear();
    out.bfs_depth[v] = 0;
    queue.push_back(v);
    while (!queue.empty()) {
        const std::int64_t w = queue.front();
        queue.pop_front();
        const std::int32_t d = out.bfs_depth[w];
        for (const std::int64_t z : adj[vertex_slot(w)]) {
            if (out.bfs_depth.emplace(z, d + 1).second) queue.push_back(z);
        }
        if (real_in_cell.find(w) == real_in_cell.end()) {
            // leftover pairs {w, z} with both cells unoccupied
            for (std::int64_t z = m; z <= n; ++z) {
                if (z == w || real_in_cell.count(z)) continue;
                const std::int64_t lo = std::min(w, z), hi = std::max(w, z);
                const double r = pair_u01(fresh_key, static_cast<std::uint64_t>(lo),
                                          static_cast<std::uint64_t>(hi));
                if (r <= connection_probability(lo, hi, gamma, beta, kernel)) {
                    if (out.bfs_depth.emplace(z, d + 1).second) queue.push_back(z);
                }
            }
        }
    }
    out.component_size = static_cast<std::int64_t>(out.bfs_depth.size());

    // Inclusion audit. Lower: every real particle of generation g projects
    // into the component within distance g. Upper: every component vertex at
    // distance d is the projection of a real particle of generation <= d.
    if (mode == EmbeddingKind::lower) {
        for (const auto& [vertex, gen] : out.projection) {
            const auto it = out.bfs_depth.find(vertex);
            if (it == out.bfs_depth.end() || it->second > gen) ++out.inclusion_violations;
        }
    } else {
        for (const auto& [vertex, depth] : out.bfs_depth) {
            const auto it = real_in_cell.find(vertex);
            if (it == real_in_cell.end() ||
                tree.particles[static_cast<std::size_t>(it->second)].generation > depth)
                ++out.inclusion_violations;
        }
    }
    return out;
}

}  // namespace critwin
