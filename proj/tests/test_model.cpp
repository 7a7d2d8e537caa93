#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "critwin/model.hpp"

using namespace critwin;

TEST_CASE("critical beta") {
    CHECK(critical_beta(0.0) == 0.25);
    CHECK(critical_beta(0.5) == 0.0);
    CHECK(critical_beta(0.3) == doctest::Approx(0.10).epsilon(1e-15));
    CHECK(critical_beta(0.7) == 0.0);  // zero on [1/2, 1)
    CHECK_THROWS_AS(critical_beta(1.0), std::invalid_argument);

    // affine-decreasing on [0, 1/2)
    double prev = critical_beta(0.0);
    for (double g = 0.05; g < 0.5; g += 0.05) {
        const double b = critical_beta(g);
        CHECK(b < prev);
        CHECK(b == doctest::Approx(0.25 - 0.5 * g).epsilon(1e-14));
        prev = b;
    }
}

TEST_CASE("connection probability examples") {
    CHECK(connection_probability(1, 4, 0.0, 0.25, Kernel::polynomial) ==
          doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(connection_probability(2, 8, 0.5, 0.1, Kernel::polynomial) ==
          doctest::Approx(0.025).epsilon(1e-13));
    // 1 - e^{-0.0625}, frozen from a high-precision expm1 evaluation
    CHECK(connection_probability(1, 4, 0.0, 0.25, Kernel::exponential_lower) ==
          doctest::Approx(0.06058693718652421388).epsilon(1e-14));
    CHECK_THROWS_AS(connection_probability(4, 4, 0.0, 0.25, Kernel::polynomial),
                    std::invalid_argument);
    CHECK_THROWS_AS(connection_probability(5, 4, 0.0, 0.25, Kernel::polynomial),
                    std::invalid_argument);
}

TEST_CASE("connection probability monotone in i and j, exponential below polynomial") {
    for (const double gamma : {0.0, 0.2, 0.45}) {
        for (const double beta : {0.1, 0.25, 0.5}) {
            for (std::int64_t j = 3; j <= 40; j += 7) {
                double prev_i = 2.0;
                for (std::int64_t i = 1; i < j; ++i) {
                    const double p = connection_probability(i, j, gamma, beta, Kernel::polynomial);
                    const double pe =
                        connection_probability(i, j, gamma, beta, Kernel::exponential_lower);
                    CHECK(pe <= p);
                    CHECK(p <= prev_i + 1e-15);
                    prev_i = p;
                }
            }
            // non-increasing in j for fixed i
            for (std::int64_t i : {1, 2, 5}) {
                double prev_j = 2.0;
                for (std::int64_t j = i + 1; j < i + 30; ++j) {
                    const double p = connection_probability(i, j, gamma, beta, Kernel::polynomial);
                    CHECK(p <= prev_j + 1e-15);
                    prev_j = p;
                }
            }
        }
    }
}

TEST_CASE("clamp at one") {
    // beta i^-gamma j^(gamma-1) = 1.5 for (1, 2) at beta = 3, gamma = 0
    const double p = connection_probability(1, 2, 0.0, 3.0, Kernel::polynomial);
    CHECK(p == 1.0);
    CHECK(connection_probability(1, 2, 0.0, 3.0, Kernel::exponential_lower) < 1.0);
}

TEST_CASE("resolve_beta window parametrization") {
    const std::int64_t n_e10 = static_cast<std::int64_t>(std::llround(std::exp(10.0)));
    ModelParams p;
    p.gamma = 0.0;
    p.n = n_e10;
    p.beta_spec = BetaSpec::window(0.0);
    CHECK(resolve_beta(p).beta == doctest::Approx(0.25).epsilon(1e-15));

    // (gamma=0, n=1e6, beta=0.26): alpha = 0.01 (ln 1e6)^2, frozen evaluation
    ModelParams q;
    q.gamma = 0.0;
    q.n = 1000000;
    q.beta_spec = BetaSpec::absolute(0.26);
    CHECK(resolve_beta(q).alpha == doctest::Approx(1.9086833197722233).epsilon(1e-12));

    // (gamma=0, n=1e6, alpha=pi^2): beta = 0.25 + pi^2/(ln 1e6)^2, frozen
    ModelParams r;
    r.gamma = 0.0;
    r.n = 1000000;
    r.beta_spec = BetaSpec::window(9.869604401089358);  // pi^2
    CHECK(resolve_beta(r).beta == doctest::Approx(0.30170896763674326).epsilon(1e-12));
}

TEST_CASE("resolve_beta round trip alpha -> beta -> alpha") {
    for (const double gamma : {0.0, 0.3, 0.45}) {
        for (const std::int64_t n : {100LL, 10000LL, 1000000LL}) {
            for (const double alpha : {-25.0, -1.0, 0.0, 3.0, 9.5}) {
                const double bc = critical_beta(gamma);
                const double ln = std::log(static_cast<double>(n));
                if (bc + alpha / (4.0 * bc * ln * ln) <= 0.0) continue;  // unresolvable cell
                ModelParams p;
                p.gamma = gamma;
                p.n = n;
                p.beta_spec = BetaSpec::window(alpha);
                const WindowPoint w = resolve_beta(p);
                ModelParams q = p;
                q.beta_spec = BetaSpec::absolute(w.beta);
                const WindowPoint w2 = resolve_beta(q);
                CHECK(w2.alpha == doctest::Approx(alpha).epsilon(1e-10));
                // mutual consistency of the resolved point
                CHECK(w.alpha ==
                      doctest::Approx(4.0 * w.beta_c * (w.beta - w.beta_c) * ln * ln).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("resolve_beta error paths") {
    ModelParams p;
    p.gamma = 0.0;
    p.n = 1000;
    p.beta_spec = BetaSpec::window(-1e6);  // so negative beta would be <= 0
    CHECK_THROWS_AS(resolve_beta(p), std::invalid_argument);
    ModelParams e;
    e.gamma = 0.0;
    e.n = 1000;
    e.kernel = Kernel::exponential_lower;
    e.beta_spec = BetaSpec::absolute(0.6);  // kernel valid only for beta <= 1/2
    CHECK_THROWS_AS(resolve_beta(e), std::invalid_argument);
    e.beta_spec = BetaSpec::absolute(0.5);
    CHECK(resolve_beta(e).beta == 0.5);
    ModelParams q;
    q.gamma = 0.6;  // outside [0, 1/2)
    q.n = 1000;
    q.beta_spec = BetaSpec::window(0.0);
    CHECK_THROWS_AS(resolve_beta(q), std::invalid_argument);
    ModelParams r;
    r.gamma = 0.0;
    r.n = 1;
    r.beta_spec = BetaSpec::window(0.0);
    CHECK_THROWS_AS(resolve_beta(r), std::invalid_argument);
}

TEST_CASE("subcritical exponent") {
    namespace asym = critwin::asymptotic;
    CHECK(asym::subcritical_exponent(0.0, 0.1875) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(asym::subcritical_exponent(0.3, 0.05) ==
          doctest::Approx(0.35857864376269050).epsilon(1e-13));
    CHECK_THROWS_AS(asym::subcritical_exponent(0.0, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(asym::subcritical_exponent(0.0, 0.3), std::invalid_argument);
    // strict inequality rho > gamma throughout the subcritical range
    for (const double gamma : {0.0, 0.2, 0.4}) {
        const double bc = critical_beta(gamma);
        for (double beta = 0.01 * bc; beta < bc; beta += 0.05 * bc)
            CHECK(asym::subcritical_exponent(gamma, beta) > gamma);
    }
}

TEST_CASE("theta predictor") {
    namespace asym = critwin::asymptotic;
    CHECK(asym::theta_supercritical(0.0, 0.5) ==
          doctest::Approx(0.043213918263772250).epsilon(1e-13));
    CHECK(asym::theta_supercritical(0.3, 0.2) ==
          doctest::Approx(3.8820320392676625e-4).epsilon(1e-12));
    CHECK_THROWS_AS(asym::theta_supercritical(0.0, 0.25), std::invalid_argument);
    // decreases monotonically to 0 as beta approaches beta_c from above
    double prev = 1.0;
    for (double beta = 0.40; beta > 0.2501; beta -= 0.01) {
        const double t = asym::theta_supercritical(0.0, beta);
        CHECK(t < prev);
        prev = t;
    }
    CHECK(prev < 1e-6);
}
