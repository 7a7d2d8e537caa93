// Killed branching random walk: intensity masses, offspring sampling,
// embeddings, classification, censuses and the local-limit sampler.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "critwin/analytics.hpp"
#include "critwin/brw.hpp"
#include "critwin/model.hpp"
#include "critwin/stats.hpp"

using namespace critwin;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("intensity mass closed forms") {
    // constant-density right piece at gamma = 0
    CHECK(intensity_mass({0.0, 0.25}, 0.0, std::log(2.0)) ==
          doctest::Approx(0.17328679513998632).epsilon(1e-14));
    CHECK(intensity_mass({0.3, 0.1}, 1.0, 1.0) == 0.0);
    // left-piece exponential antiderivative, truncated at -40
    CHECK(intensity_mass({0.5, 0.125}, -40.0, 0.0) ==
          doctest::Approx(0.24999999948471159).epsilon(1e-13));
    // additive over disjoint intervals, straddling zero
    const OffspringIntensity mu{0.2, 0.3};
    const double whole = intensity_mass(mu, -2.0, 3.0);
    const double parts = intensity_mass(mu, -2.0, -0.5) + intensity_mass(mu, -0.5, 1.0) +
                         intensity_mass(mu, 1.0, 3.0);
    CHECK(whole == doctest::Approx(parts).epsilon(1e-13));
    // unbounded left end
    CHECK(intensity_mass(mu, -kInf, 0.0) == doctest::Approx(0.3 / 0.8).epsilon(1e-13));
    CHECK_THROWS(intensity_mass(mu, 2.0, 1.0));
}

TEST_CASE("offspring sampling contract") {
    const OffspringIntensity mu{0.0, 0.25};
    SplitMix64 rng(21);
    // zero-length window containing the parent: always empty
    for (int r = 0; r < 200; ++r) CHECK(sample_offspring(mu, 1.0, 1.0, 1.0, rng).empty());
    // confinement and ascending order in every draw
    for (int r = 0; r < 2000; ++r) {
        const auto kids = sample_offspring(mu, 1.0, -2.0, 4.0, rng);
        for (std::size_t c = 0; c < kids.size(); ++c) {
            CHECK(kids[c] >= -2.0);
            CHECK(kids[c] <= 4.0);
            if (c > 0) CHECK(kids[c] >= kids[c - 1]);
        }
    }
}

TEST_CASE("offspring count is Poisson with the closed-form mass") {
    const OffspringIntensity mu{0.0, 0.25};
    const double mass = intensity_mass(mu, 0.0, std::log(100.0));  // 0.25 log 100 ~ 1.1513
    SplitMix64 rng(22);
    MeanVar count;
    const int reps = 200000;
    for (int r = 0; r < reps; ++r)
        count.add(static_cast<double>(sample_offspring(mu, 0.0, 0.0, std::log(100.0), rng).size()));
    CHECK(std::abs(count.mean() - mass) < 4.0 * count.sem());
    CHECK(count.variance() == doctest::Approx(mass).epsilon(0.05));
    // position distribution within the window: mean of a uniform on [0, log 100]
    // (gamma = 0 right piece is flat)
    MeanVar pos;
    for (int r = 0; r < 50000; ++r)
        for (const double y : sample_offspring(mu, 0.0, 0.0, std::log(100.0), rng)) pos.add(y);
    CHECK(std::abs(pos.mean() - 0.5 * std::log(100.0)) < 4.0 * pos.sem());
}

TEST_CASE("embedding round trips and cell membership") {
    for (const auto kind : {EmbeddingKind::lower, EmbeddingKind::upper}) {
        for (const std::int64_t m : {1LL, 2LL, 7LL}) {
            const std::int64_t n = 500;
            const Embedding emb(kind, m, n);
            for (std::int64_t i = m; i <= n; ++i) CHECK(emb.cell(emb.position(i)) == i);
            // interior points map into the right cell
            SplitMix64 rng(23);
            for (int r = 0; r < 2000; ++r) {
                const double x =
                    emb.kill_lo() + rng.u01() * (emb.kill_hi() - emb.kill_lo());
                if (!emb.inside(x)) continue;
                const std::int64_t c = emb.cell(x);
                CHECK(c >= m);
                CHECK(c <= n);
                if (kind == EmbeddingKind::lower) {
                    CHECK(x >= std::log(static_cast<double>(c)));
                    CHECK(x < std::log(static_cast<double>(c + 1)));
                } else if (c >= 2) {
                    CHECK(x > std::log(static_cast<double>(2 * c - 3)));
                    CHECK(x <= std::log(static_cast<double>(2 * c - 1)));
                }
            }
        }
    }
    // upper singleton cell: position 0 is vertex 1
    const Embedding up(EmbeddingKind::upper, 1, 10);
    CHECK(up.cell(0.0) == 1);
    CHECK(up.position(1) == 0.0);
}

TEST_CASE("grow_tree: zero-mass window leaves only the root") {
    const OffspringIntensity mu{0.0, 0.25};
    SplitMix64 rng(24);
    const BrwTree tree = grow_tree(mu, 0.0, 0.0, 0.0, nullptr, {}, rng);
    CHECK(tree.progeny() == 1);
    CHECK_FALSE(tree.censored);
}

TEST_CASE("grow_tree confinement, generations, sibling order") {
    const OffspringIntensity mu{0.3, 0.1};
    SplitMix64 rng(25);
    for (int r = 0; r < 300; ++r) {
        const BrwTree tree = grow_tree(mu, 2.0, 0.0, 6.0, nullptr, {}, rng);
        for (std::size_t t = 1; t < tree.particles.size(); ++t) {
            const Particle& p = tree.particles[t];
            CHECK(p.position >= 0.0);
            CHECK(p.position <= 6.0);
            CHECK(p.parent >= 0);
            CHECK(p.generation == tree.particles[static_cast<std::size_t>(p.parent)].generation + 1);
        }
    }
}

TEST_CASE("mean progeny matches the exact many-to-one closed form") {
    // E_x[T_{[0,K]}] = e^{-x/2} H^+_{1/(4bc)}(2bc x, beta/bc-1, 2bc K), an identity
    for (const double gamma : {0.0, 0.3}) {
        const double bc = critical_beta(gamma);
        const double K = 8.0;
        const OffspringIntensity mu{gamma, bc};
        SplitMix64 rng(26);
        MeanVar progeny;
        const int reps = 100000;
        for (int r = 0; r < reps; ++r) {
            const BrwTree tree = grow_tree(mu, 0.0, 0.0, K, nullptr, {}, rng);
            progeny.add(static_cast<double>(tree.progeny()));
        }
        const double exact = rw::progeny_mean_exact(gamma, bc, K, 0.0);
        INFO("gamma=", gamma, " mc=", progeny.mean(), " exact=", exact);
        CHECK(std::abs(progeny.mean() - exact) < 3.0 * progeny.sem());
    }
}

TEST_CASE("classification: at most one real particle per cell; relabel is stable") {
    const double gamma = 0.0;
    const double bc = critical_beta(gamma);
    const OffspringIntensity mu{gamma, bc};
    SplitMix64 rng(27);
    for (int r = 0; r < 300; ++r) {
        const Embedding emb(EmbeddingKind::lower, 1, 300);
        BrwTree tree = grow_tree(mu, emb.position(1), emb.kill_lo(), emb.kill_hi(), &emb, {}, rng);
        std::unordered_map<std::int64_t, int> real_count;
        for (const Particle& p : tree.particles)
            if (p.label == ParticleLabel::real) ++real_count[emb.cell(p.position)];
        for (const auto& [cell, cnt] : real_count) {
            (void)cell;
            CHECK(cnt == 1);
        }
        // colliding particles have real parents; fake descendants have fake ancestors
        for (const Particle& p : tree.particles) {
            if (p.label == ParticleLabel::colliding)
                CHECK(tree.particles[static_cast<std::size_t>(p.parent)].label ==
                      ParticleLabel::real);
            if (p.label == ParticleLabel::fake_descendant)
                CHECK(tree.particles[static_cast<std::size_t>(p.parent)].label !=
                      ParticleLabel::real);
        }
        // relabeling a stored tree reproduces identical labels
        std::vector<ParticleLabel> before;
        for (const Particle& p : tree.particles) before.push_back(p.label);
        assign_labels(tree, emb);
        for (std::size_t t = 0; t < tree.particles.size(); ++t)
            CHECK(tree.particles[t].label == before[t]);
    }
}

TEST_CASE("collision census partitions the tree") {
    const OffspringIntensity mu{0.0, 0.25};
    SplitMix64 rng(28);
    std::int64_t seen_colliding = 0;
    for (int r = 0; r < 200; ++r) {
        const Embedding emb(EmbeddingKind::lower, 1, 200);
        const BrwTree tree =
            grow_tree(mu, emb.position(1), emb.kill_lo(), emb.kill_hi(), &emb, {}, rng);
        const CollisionCensus c = collision_census(tree, emb);
        CHECK(c.real + c.colliding + c.fake_descendant == tree.progeny());
        CHECK(c.fake_total() == c.colliding + c.fake_descendant);
        std::int64_t per_cell = 0;
        for (const auto& [cell, cnt] : c.colliding_per_cell) {
            (void)cell;
            per_cell += cnt;
        }
        CHECK(per_cell == c.colliding);
        seen_colliding += c.colliding;
    }
    CHECK(seen_colliding > 0);  // collisions do occur from an early root
    // single-particle tree
    SplitMix64 rng2(29);
    const Embedding emb1(EmbeddingKind::lower, 1, 1);
    const BrwTree t1 = grow_tree(mu, 0.0, emb1.kill_lo(), emb1.kill_hi(), &emb1, {}, rng2);
    const CollisionCensus c1 = collision_census(t1, emb1);
    CHECK(c1.real == 1);
    CHECK(c1.colliding == 0);
    CHECK(c1.fake_descendant == 0);
}

TEST_CASE("fake fraction decreases as the root vertex ages (n/m fixed)") {
    const OffspringIntensity mu{0.0, 0.25};
    const double ratio = 64.0;
    double prev_frac = 1.0;
    for (const std::int64_t m : {1LL, 8LL, 64LL}) {
        const std::int64_t n = static_cast<std::int64_t>(ratio) * m;
        SplitMix64 rng(30 + static_cast<std::uint64_t>(m));
        std::int64_t fake = 0, total = 0;
        for (int r = 0; r < 4000; ++r) {
            const Embedding emb(EmbeddingKind::lower, m, n);
            const BrwTree tree =
                grow_tree(mu, emb.position(m), emb.kill_lo(), emb.kill_hi(), &emb, {}, rng);
            const CollisionCensus c = collision_census(tree, emb);
            fake += c.fake_total();
            total += tree.progeny();
        }
        const double frac = static_cast<double>(fake) / static_cast<double>(total);
        INFO("m=", m, " fake fraction=", frac);
        CHECK(frac < prev_frac);
        prev_frac = frac;
    }
}

TEST_CASE("censoring via particle cap") {
    const OffspringIntensity mu{0.0, 0.5};  // supercritical: trees explode
    SplitMix64 rng(31);
    GrowCaps caps;
    caps.max_particles = 50;
    bool censored_seen = false;
    for (int r = 0; r < 50 && !censored_seen; ++r) {
        const BrwTree tree = grow_tree(mu, 10.0, 0.0, 20.0, nullptr, caps, rng);
        CHECK(tree.progeny() <= 50);
        censored_seen = tree.censored;
    }
    CHECK(censored_seen);
}

TEST_CASE("local limit: compensated tail stays within a factor-10 band") {
    SplitMix64 rng(40);
    const std::vector<std::int64_t> ks = {8, 32, 128, 512};
    std::vector<std::int64_t> ge(ks.size(), 0);
    const std::int64_t reps = 200000;
    for (std::int64_t r = 0; r < reps; ++r) {
        const auto s = local_limit_progeny(0.0, 1000000, rng);
        if (s.censored) continue;
        for (std::size_t i = 0; i < ks.size(); ++i)
            if (s.progeny >= ks[i]) ++ge[i];
    }
    double cmin = 1e300, cmax = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const double lk = std::log(static_cast<double>(ks[i]));
        const double comp = static_cast<double>(ks[i]) * lk * lk * static_cast<double>(ge[i]) /
                            static_cast<double>(reps);
        cmin = std::min(cmin, comp);
        cmax = std::max(cmax, comp);
    }
    INFO("compensated range [", cmin, ", ", cmax, "]");
    CHECK(cmin > 0.0);
    CHECK(cmax / cmin <= 10.0);
}

TEST_CASE("BRW progeny mean over predictor lies in [0.5, 2] at K=8") {
    const OffspringIntensity mu{0.0, 0.25};
    SplitMix64 rng(41);
    MeanVar progeny;
    for (int r = 0; r < 30000; ++r)
        progeny.add(static_cast<double>(grow_tree(mu, 0.0, 0.0, 8.0, nullptr, {}, rng).progeny()));
    const double ratio = progeny.mean() / rw::first_moment_predictor(0.0, 0.25, 8.0, 0.0);
    INFO("ratio = ", ratio);
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 2.0);
}

TEST_CASE("local limit: progeny >= 1, censoring flagged, small-sample mean sane") {
    SplitMix64 rng(32);
    MeanVar progeny;
    std::int64_t censored = 0;
    const int reps = 20000;
    for (int r = 0; r < reps; ++r) {
        const LocalLimitSample s = local_limit_progeny(0.0, 1000000, rng);
        CHECK(s.progeny >= 1);
        CHECK(s.barrier >= 0.0);
        if (s.censored) {
            ++censored;
            continue;
        }
        progeny.add(static_cast<double>(s.progeny));
    }
    CHECK(censored <= reps / 100);
    // limit mean is 4(1-gamma^2) = 4; generous band at this sample size
    CHECK(progeny.mean() == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("tree dump golden snapshot") {
    // pinned realization covering all three labels; the byte-exact dump is a
    // reproducibility contract
    const OffspringIntensity mu{0.0, 0.25};
    const Embedding emb(EmbeddingKind::lower, 1, 40);
    SplitMix64 rng(17);
    const BrwTree tree = grow_tree(mu, emb.position(1), emb.kill_lo(), emb.kill_hi(), &emb, {}, rng);
    std::ostringstream os;
    os.precision(17);
    dump_tree(os, tree);
    const char* golden =
        "0 -1 0 0 real\n"
        "1 0 1 1.2192764273021244 real\n"
        "2 1 2 0.24237649339276712 colliding\n"
        "3 1 2 0.62374195282814271 colliding\n"
        "4 1 2 1.3309001760302714 colliding\n"
        "5 1 2 2.7825108745009608 real\n"
        "6 2 3 2.9804508962886596 fake-descendant\n"
        "7 3 3 1.6689458734480829 fake-descendant\n"
        "8 4 3 0.88309698403792924 fake-descendant\n"
        "9 4 3 1.6650570590463336 fake-descendant\n"
        "10 8 4 1.9970196313515423 fake-descendant\n"
        "11 7 4 2.7576109319182378 fake-descendant\n"
        "12 10 5 3.3926165130859944 fake-descendant\n";
    CHECK(os.str() == golden);
}

TEST_CASE("tree dump format") {
    const OffspringIntensity mu{0.0, 0.25};
    SplitMix64 rng(33);
    const Embedding emb(EmbeddingKind::lower, 1, 50);
    const BrwTree tree = grow_tree(mu, 0.0, emb.kill_lo(), emb.kill_hi(), &emb, {}, rng);
    std::ostringstream os;
    dump_tree(os, tree);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    std::istringstream first(line);
    std::int64_t id, parent;
    std::int32_t gen;
    double pos;
    std::string label;
    first >> id >> parent >> gen >> pos >> label;
    CHECK(id == 0);
    CHECK(parent == -1);
    CHECK(gen == 0);
    CHECK(label == "real");
}
