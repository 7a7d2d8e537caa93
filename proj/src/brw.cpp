#include "critwin/brw.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace critwin {

namespace {

// Mass of the left piece beta e^{(1-gamma) y} over [a, b] with b <= 0;
// a may be -infinity.
double left_mass(const OffspringIntensity& mu, double a, double b) {
    const double lam = 1.0 - mu.gamma;
    const double hi = std::exp(lam * b);
    const double lo = std::isinf(a) ? 0.0 : std::exp(lam * a);
    return mu.beta / lam * (hi - lo);
}

// Mass of the right piece beta e^{gamma y} over [a, b] with a >= 0.
double right_mass(const OffspringIntensity& mu, double a, double b) {
    if (mu.gamma == 0.0) return mu.beta * (b - a);
    return mu.beta / mu.gamma * (std::exp(mu.gamma * b) - std::exp(mu.gamma * a));
}

}  // namespace

double intensity_mass(const OffspringIntensity& mu, double a, double b) {
    if (!(mu.gamma >= 0.0 && mu.gamma < 1.0))
        throw std::invalid_argument("intensity_mass: gamma must lie in [0, 1)");
    if (!(mu.beta > 0.0)) throw std::invalid_argument("intensity_mass: beta must be > 0");
    if (!(a <= b)) throw std::invalid_argument("intensity_mass: need a <= b");
    double mass = 0.0;
    if (a < 0.0) mass += left_mass(mu, a, std::min(b, 0.0));
    if (b > 0.0) mass += right_mass(mu, std::max(a, 0.0), b);
    return mass;
}

std::vector<double> sample_offspring(const OffspringIntensity& mu, double parent_pos,
                                     double kill_lo, double kill_hi, SplitMix64& rng) {
    if (!(kill_lo <= kill_hi)) throw std::invalid_argument("sample_offspring: bad kill interval");
    // Displacement window relative to the parent.
    const double wlo = kill_lo - parent_pos;
    const double whi = kill_hi - parent_pos;
    const double m_left = wlo < 0.0 ? left_mass(mu, wlo, std::min(whi, 0.0)) : 0.0;
    const double m_right = whi > 0.0 ? right_mass(mu, std::max(wlo, 0.0), whi) : 0.0;
    const double total = m_left + m_right;
    std::vector<double> out;
    if (!(total > 0.0)) return out;

    const std::int64_t count = rng.poisson(total);
    out.reserve(static_cast<std::size_t>(count));
    const double lam = 1.0 - mu.gamma;
    for (std::int64_t c = 0; c < count; ++c) {
        const double u = rng.u01() * total;
        double y;
        if (u < m_left) {
            // invert beta/lam (e^{lam y} - e^{lam wlo}) = u on [wlo, min(whi,0)]
            const double base = std::isinf(wlo) ? 0.0 : std::exp(lam * wlo);
            y = std::log(base + u * lam / mu.beta) / lam;
        } else {
            const double v = u - m_left;
            const double rlo = std::max(wlo, 0.0);
            if (mu.gamma == 0.0) {
                y = rlo + v / mu.beta;
            } else {
                y = std::log(std::exp(mu.gamma * rlo) + v * mu.gamma / mu.beta) / mu.gamma;
            }
        }
        // rounding guard: the inverse CDF may land one ulp outside the window
        const double pos = std::min(std::max(parent_pos + y, kill_lo), kill_hi);
        out.push_back(pos);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Embedding::Embedding(EmbeddingKind k, std::int64_t m_, std::int64_t n_) : kind(k), m(m_), n(n_) {
    if (!(m >= 1 && m <= n)) throw std::invalid_argument("Embedding: need 1 <= m <= n");
    if (kind == EmbeddingKind::lower) {
        kill_lo_ = std::log(static_cast<double>(m));
        kill_hi_ = std::log(static_cast<double>(n + 1));
    } else {
        kill_lo_ = m >= 2 ? std::log(static_cast<double>(2 * m - 3)) : 0.0;
        kill_hi_ = std::log(static_cast<double>(2 * n - 1));
    }
}

double Embedding::position(std::int64_t i) const {
    if (!(i >= m && i <= n)) throw std::invalid_argument("Embedding::position: i out of range");
    if (kind == EmbeddingKind::lower) return std::log(static_cast<double>(i));
    return std::log(static_cast<double>(2 * i - 1));
}

bool Embedding::inside(double x) const {
    if (kind == EmbeddingKind::lower) return x >= kill_lo_ && x < kill_hi_;
    if (m == 1) return x >= 0.0 && x <= kill_hi_;
    return x > kill_lo_ && x <= kill_hi_;
}

std::int64_t Embedding::cell(double x) const {
    if (kind == EmbeddingKind::lower) {
        // l(x) = floor(e^x), corrected so that x in [log i, log(i+1))
        std::int64_t i = static_cast<std::int64_t>(std::floor(std::exp(x)));
        while (i < n && std::log(static_cast<double>(i + 1)) <= x) ++i;
        while (i > 1 && std::log(static_cast<double>(i)) > x) --i;
        if (i < m || i > n) throw std::invalid_argument("Embedding::cell: x outside range (lower)");
        return i;
    }
    if (x == 0.0) return 1;  // I_1 = {0}; exact by construction (root position assigned)
    if (!(x > 0.0)) throw std::invalid_argument("Embedding::cell: x < 0 (upper)");
    // smallest i >= 2 with x <= log(2i-1), i.e. x in (log(2i-3), log(2i-1)]
    std::int64_t i = static_cast<std::int64_t>(std::ceil((std::exp(x) + 1.0) / 2.0));
    if (i < 2) i = 2;
    while (i < n && std::log(static_cast<double>(2 * i - 1)) < x) ++i;
    while (i > 2 && std::log(static_cast<double>(2 * i - 3)) >= x) --i;
    if (i < m || i > n) throw std::invalid_argument("Embedding::cell: x outside range (upper)");
    return i;
}

double Embedding::cell_mass(const OffspringIntensity& mu, double parent_pos,
                            std::int64_t j) const {
    if (!(j >= m && j <= n)) throw std::invalid_argument("Embedding::cell_mass: j out of range");
    double lo, hi;
    if (kind == EmbeddingKind::lower) {
        lo = std::log(static_cast<double>(j));
        hi = std::log(static_cast<double>(j + 1));
    } else {
        if (j == 1) return 0.0;  // singleton cell
        lo = std::log(static_cast<double>(2 * j - 3));
        hi = std::log(static_cast<double>(2 * j - 1));
    }
    return intensity_mass(mu, lo - parent_pos, hi - parent_pos);
}

namespace {

// Online label bookkeeping: cells occupied by a real particle.
struct LabelState {
    const Embedding* emb = nullptr;
    std::unordered_map<std::int64_t, bool> occupied;

    ParticleLabel classify(const BrwTree& tree, std::int32_t parent, double pos) {
        if (parent >= 0 && tree.particles[parent].label != ParticleLabel::real)
            return ParticleLabel::fake_descendant;
        const std::int64_t c = emb->cell(pos);
        auto [it, inserted] = occupied.try_emplace(c, true);
        if (!inserted) return ParticleLabel::colliding;
        return ParticleLabel::real;
    }
};

}  // namespace

BrwTree grow_tree(const OffspringIntensity& mu, double root_pos, double kill_lo, double kill_hi,
                  const Embedding* embedding, const GrowCaps& caps, SplitMix64& rng) {
    BrwTree tree;
    tree.kill_lo = kill_lo;
    tree.kill_hi = kill_hi;
    tree.root_position = root_pos;
    tree.labeled = embedding != nullptr;
    if (embedding != nullptr && !embedding->inside(root_pos))
        throw std::invalid_argument("grow_tree: root outside the kill interval");
    if (embedding == nullptr && !(root_pos >= kill_lo && root_pos <= kill_hi))
        throw std::invalid_argument("grow_tree: root outside the kill interval");

    LabelState labels;
    labels.emb = embedding;
    tree.particles.push_back(Particle{-1, 0, root_pos, ParticleLabel::real});
    if (embedding != nullptr) labels.occupied[embedding->cell(root_pos)] = true;

    std::size_t gen_begin = 0, gen_end = 1;
    std::int32_t g = 0;
    std::vector<std::size_t> order;
    while (gen_begin < gen_end && g < caps.max_generation && !tree.censored) {
        // Parents in position order; children appended per parent in ascending
        // position. The concatenation is then exactly the exploration order
        // (parent position, then own position) for generation g+1.
        order.resize(gen_end - gen_begin);
        std::iota(order.begin(), order.end(), gen_begin);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double pa = tree.particles[a].position, pb = tree.particles[b].position;
            if (pa != pb) return pa < pb;
            return a < b;  // measure-zero tie, broken by id
        });
        for (const std::size_t p : order) {
            const auto kids =
                sample_offspring(mu, tree.particles[p].position, kill_lo, kill_hi, rng);
            for (const double y : kids) {
                if (embedding != nullptr && !embedding->inside(y)) continue;  // ulp guard
                if (static_cast<std::int64_t>(tree.particles.size()) >= caps.max_particles) {
                    tree.censored = true;
                    break;
                }
                Particle q;
                q.parent = static_cast<std::int32_t>(p);
                q.generation = g + 1;
                q.position = y;
                q.label = embedding != nullptr
                              ? labels.classify(tree, q.parent, y)
                              : ParticleLabel::real;
                tree.particles.push_back(q);
            }
            if (tree.censored) break;
        }
        gen_begin = gen_end;
        gen_end = tree.particles.size();
        ++g;
    }
    return tree;
}

void assign_labels(BrwTree& tree, const Embedding& embedding) {
    // Relabel in exploration order from stored positions and structure only.
    std::vector<std::size_t> idx(tree.particles.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const Particle& pa = tree.particles[a];
        const Particle& pb = tree.particles[b];
        if (pa.generation != pb.generation) return pa.generation < pb.generation;
        const double xa = pa.parent >= 0 ? tree.particles[pa.parent].position : -1.0;
        const double xb = pb.parent >= 0 ? tree.particles[pb.parent].position : -1.0;
        if (xa != xb) return xa < xb;
        if (pa.position != pb.position) return pa.position < pb.position;
        return a < b;
    });
    LabelState labels;
    labels.emb = &embedding;
    for (const std::size_t t : idx) {
        Particle& p = tree.particles[t];
        if (p.parent < 0) {
            p.label = ParticleLabel::real;
            labels.occupied[embedding.cell(p.position)] = true;
        } else {
            p.label = labels.classify(tree, p.parent, p.position);
        }
    }
    tree.labeled = true;
}

CollisionCensus collision_census(const BrwTree& tree, const Embedding& embedding) {
    if (!tree.labeled) throw std::invalid_argument("collision_census: tree has no labels");
    CollisionCensus c;
    for (const Particle& p : tree.particles) {
        switch (p.label) {
            case ParticleLabel::real: ++c.real; break;
            case ParticleLabel::colliding:
                ++c.colliding;
                ++c.colliding_per_cell[embedding.cell(p.position)];
                break;
            case ParticleLabel::fake_descendant: ++c.fake_descendant; break;
        }
    }
    return c;
}

LocalLimitSample local_limit_progeny(double gamma, std::int64_t max_particles, SplitMix64& rng) {
    if (!(gamma >= 0.0 && gamma < 0.5))
        throw std::invalid_argument("local_limit_progeny: gamma must lie in [0, 1/2)");
    const OffspringIntensity mu{gamma, 0.25 - 0.5 * gamma};  // beta pinned at beta_c
    LocalLimitSample s;
    s.barrier = rng.exponential();
    const double inf = std::numeric_limits<double>::infinity();

    // Counting-only growth, frontier positions only; no labels, no tree.
    std::vector<double> frontier{0.0}, next;
    std::int64_t progeny = 1;
    while (!frontier.empty()) {
        next.clear();
        for (const double x : frontier) {
            const auto kids = sample_offspring(mu, x, -inf, s.barrier, rng);
            progeny += static_cast<std::int64_t>(kids.size());
            next.insert(next.end(), kids.begin(), kids.end());
            if (progeny >= max_particles) {
                s.censored = true;
                s.progeny = std::min(progeny, max_particles);
                return s;
            }
        }
        frontier.swap(next);
    }
    s.progeny = progeny;
    return s;
}

void dump_tree(std::ostream& os, const BrwTree& tree) {
    const auto label_name = [](ParticleLabel l) {
        switch (l) {
            case ParticleLabel::real: return "real";
            case ParticleLabel::colliding: return "colliding";
            case ParticleLabel::fake_descendant: return "fake-descendant";
        }
        return "?";
    };
    for (std::size_t t = 0; t < tree.particles.size(); ++t) {
        const Particle& p = tree.particles[t];
        os << t << " " << p.parent << " " << p.generation << " " << p.position << " "
           << (tree.labeled ? label_name(p.label) : "-") << "\n";
    }
}

}  // namespace critwin
