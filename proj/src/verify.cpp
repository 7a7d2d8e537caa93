#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "critwin/analytics.hpp"
#include "critwin/brw.hpp"
#include "critwin/experiments.hpp"
#include "critwin/model.hpp"
#include "critwin/mto.hpp"
#include "critwin/rng.hpp"
#include "critwin/stats.hpp"
#include "critwin/walk_mc.hpp"

namespace critwin {

bool ManyToOneResult::within(double n_se) const {
    const double se = std::sqrt(brw_se * brw_se + rw_se * rw_se);
    return std::abs(brw_mean - rw_mean) <= n_se * se;
}

ManyToOneResult many_to_one_check(double gamma, double beta, double K, double x,
                                  std::int32_t max_gen, std::int64_t reps, std::uint64_t seed) {
    const double bc = critical_beta(gamma);
    const OffspringIntensity mu{gamma, beta};
    ManyToOneResult out;

    MeanVar brw;
    {
        SplitMix64 rng(key_combine(seed, 0xB1uLL));
        GrowCaps caps;
        caps.max_generation = max_gen;
        caps.max_particles = 1 << 22;
        for (std::int64_t r = 0; r < reps; ++r) {
            const BrwTree tree = grow_tree(mu, x, 0.0, K, nullptr, caps, rng);
            brw.add(static_cast<double>(tree.progeny()));
        }
    }
    out.brw_mean = brw.mean();
    out.brw_se = brw.sem();

    MeanVar rwalk;
    {
        SplitMix64 rng(key_combine(seed, 0xB2uLL));
        const double ratio = beta / bc;
        const double L = 2.0 * bc * K;
        for (std::int64_t r = 0; r < reps; ++r) {
            double pos = 2.0 * bc * x;
            double w = 1.0;
            double acc = 0.0;
            for (std::int32_t k = 0; k <= max_gen; ++k) {
                if (pos < 0.0 || pos > L) break;  // tau <= k: indicator dead
                acc += w * std::exp(pos / (4.0 * bc));
                pos += rng.laplace();
                w *= ratio;
            }
            rwalk.add(acc);
        }
    }
    out.rw_mean = std::exp(-x / 2.0) * rwalk.mean();
    out.rw_se = std::exp(-x / 2.0) * rwalk.sem();
    return out;
}

namespace {

struct CheckList {
    std::vector<VerifyCheck> checks;
    void add(const std::string& name, bool pass, const std::string& detail = "") {
        checks.push_back({name, pass, detail});
    }
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::vector<VerifyCheck> run_verify_checks(const VerifyOptions& opts) {
    CheckList out;
    const double corrupt = opts.si_corruption;
    const auto si_c = [corrupt](double a) { return rw::si(a) + corrupt; };
    const double pi = rw::kPi;

    // --- exact analytic identities -------------------------------------
    out.add("critical_beta_exact",
            critical_beta(0.0) == 0.25 && critical_beta(0.5) == 0.0 && critical_beta(0.3) == 0.10);
    out.add("si_exact", std::abs(si_c(0.0) - 1.0) < 1e-12 && std::abs(si_c(pi * pi)) < 1e-12,
            "Si(0)=" + num(si_c(0.0)) + " Si(pi^2)=" + num(si_c(pi * pi)));
    {
        bool ok = true;
        for (const double L : {5.0, 20.0, 100.0}) {
            ok = ok && std::abs(rw::hitting_pgf(0.0, L) - 1.0) < 1e-12;
            ok = ok && std::abs(rw::hitting_pgf(-1.0, L)) < 1e-12;
        }
        out.add("hitting_pgf_exact", ok);
    }
    {
        bool ok = true;
        for (const double b : {0.5, 1.0, 2.0})
            for (const double x : {0.0, 3.0, 10.0}) {
                const double h = rw::h_plus(b, x, -1.0, 10.0);
                ok = ok && std::abs(h - std::exp(b * x)) <= 1e-12 * std::exp(b * x);
            }
        out.add("h_plus_rho_minus_one_exact", ok);
    }

    // --- series / branch consistency near alpha = 0 ---------------------
    {
        bool ok = true;
        for (const double a : {1e-8, -1e-8, 2e-8, -2e-8})
            for (const double y : {0.1, 0.5, 1.0}) {
                const double r = std::sqrt(std::abs(a));
                const double branch = a > 0.0 ? std::sin(r * y) / r : std::sinh(r * y) / r;
                ok = ok && std::abs(rw::si_xy(a, y) - branch) < 1e-12;
            }
        out.add("si_series_branch_consistency", ok);
    }
    {
        bool ok = true;
        double prev = si_c(1e-6);
        ok = ok && prev > 0.0;
        for (double a = 0.5; a < pi * pi - 1e-9; a += 0.5) {
            const double v = si_c(a);
            ok = ok && v > 0.0 && v < prev;
            prev = v;
        }
        out.add("si_positive_decreasing", ok);
    }

    // --- rho* ------------------------------------------------------------
    {
        bool ok = true;
        double prev = 0.0;
        for (const double L : {10.0, 100.0, 1000.0, 10000.0}) {
            const double rs = rw::rho_star(L);
            const double t = std::sqrt(rs);
            const double residual = std::abs(std::cos(t * L / 2.0) - t * std::sin(t * L / 2.0));
            ok = ok && residual < 1e-10;
            const double scaled = rs * L * L;
            ok = ok && scaled > prev && scaled < pi * pi;
            if (L >= 100.0) ok = ok && scaled > 8.5;
            prev = scaled;
        }
        out.add("rho_star_residual_band_trend", ok);
    }
    {
        const bool ok = std::abs(rw::hitting_pgf(1e-10, 20.0) - 1.0) < 1e-6 &&
                        std::abs(rw::hitting_pgf(-1e-10, 20.0) - 1.0) < 1e-6;
        out.add("hitting_pgf_continuous_at_zero", ok);
    }

    // --- reflection identity ---------------------------------------------
    {
        bool ok = true;
        for (const double b : {0.5, 1.0, 2.0})
            for (const double x : {0.0, 4.0, 9.0})
                for (const double rho : {-0.3, 0.0, 0.01}) {
                    const double lhs = rw::h_minus(b, x, rho, 12.0);
                    const double rhs = std::exp(-12.0 * b) * rw::h_plus(b, 12.0 - x, rho, 12.0);
                    ok = ok && std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs);
                }
        out.add("h_reflection_identity", ok);
    }

    // --- walk sanity: step moments, exit symmetry, overshoot --------------
    {
        SplitMix64 rng(key_combine(opts.seed, 0x51uLL));
        MeanVar step;
        const std::int64_t n = 1000000;
        for (std::int64_t i = 0; i < n; ++i) step.add(rng.laplace());
        const bool mean_ok = std::abs(step.mean()) <= 4.0 * step.sem();
        // Var[(X-mu)^2] = E X^4 - (E X^2)^2 = 24 - 4 = 20 for Laplace(1)
        const double var_se = std::sqrt(20.0 / static_cast<double>(n));
        const bool var_ok = std::abs(step.variance() - 2.0) <= 4.0 * var_se;
        out.add("laplace_step_moments", mean_ok && var_ok,
                "mean=" + num(step.mean()) + " var=" + num(step.variance()));
    }
    {
        rw::WalkMcRequest req;
        req.x0 = 10.0;
        req.L = 20.0;
        req.rho = 0.0;
        req.reps = std::max<std::int64_t>(opts.mc_paths / 10, 20000);
        SplitMix64 rng(key_combine(opts.seed, 0x52uLL));
        const auto st = laplace_walk_mc(req, rng);
        const bool sym = std::abs(st.exit_right.mean() - 0.5) <= 4.0 * st.exit_right.sem();
        out.add("exit_symmetry_from_center", sym, "P(right)=" + num(st.exit_right.mean()));
        // Kolmogorov-Smirnov against Exp(1) at the 1% level; statistic from
        // the same run's overshoot sample.
        SplitMix64 rng2(key_combine(opts.seed, 0x53uLL));
        rw::WalkMcRequest req2 = req;
        req2.reps = 100000;
        std::vector<double> overshoots;
        overshoots.reserve(static_cast<std::size_t>(req2.reps));
        {
            // re-simulate recording raw overshoots
            for (std::int64_t r = 0; r < req2.reps; ++r) {
                double pos = req2.x0;
                for (;;) {
                    pos += rng2.laplace();
                    if (pos < 0.0 || pos > req2.L) break;
                }
                overshoots.push_back(pos > req2.L ? pos - req2.L : -pos);
            }
        }
        std::sort(overshoots.begin(), overshoots.end());
        double ks = 0.0;
        const double n = static_cast<double>(overshoots.size());
        for (std::size_t i = 0; i < overshoots.size(); ++i) {
            const double f = -std::expm1(-overshoots[i]);
            ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / n));
            ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
        }
        const double ks_crit = 1.63 / std::sqrt(n);  // 1% asymptotic critical value
        out.add("overshoot_exponential_ks", ks < ks_crit,
                "ks=" + num(ks) + " crit=" + num(ks_crit));
    }

    // --- closed forms vs Monte Carlo --------------------------------------
    {
        rw::WalkMcRequest req;
        req.x0 = 10.0;
        req.L = 20.0;
        req.rho = -0.1;
        req.reps = opts.mc_paths;
        req.want_pgf = true;
        SplitMix64 rng(key_combine(opts.seed, 0x54uLL));
        const auto st = laplace_walk_mc(req, rng);
        const double closed = rw::hitting_pgf(-0.1, 20.0);
        const bool ok = std::abs(st.pgf.mean() - closed) <= 3.0 * st.pgf.sem();
        out.add("hitting_pgf_vs_mc", ok,
                "closed=" + num(closed) + " mc=" + num(st.pgf.mean()) + "+-" + num(st.pgf.sem()));
    }
    {
        rw::WalkMcRequest req;
        req.x0 = 7.5;
        req.L = 15.0;
        req.rho = -0.05;
        req.reps = opts.mc_paths;
        req.h_b = {1.0};
        SplitMix64 rng(key_combine(opts.seed, 0x55uLL));
        const auto st = laplace_walk_mc(req, rng);
        const double cp = rw::h_plus(1.0, 7.5, -0.05, 15.0);
        const double cm = rw::h_minus(1.0, 7.5, -0.05, 15.0);
        const bool okp = std::abs(st.h_plus[0].mean() - cp) <= 3.0 * st.h_plus[0].sem();
        const bool okm = std::abs(st.h_minus[0].mean() - cm) <= 3.0 * st.h_minus[0].sem();
        out.add("h_plus_minus_vs_mc", okp && okm,
                "h+: closed=" + num(cp) + " mc=" + num(st.h_plus[0].mean()) +
                    "  h-: closed=" + num(cm) + " mc=" + num(st.h_minus[0].mean()));
    }

    // --- inequality suites -------------------------------------------------
    {
        bool ok = true;
        for (const double L : {10.0, 100.0})
            for (double rho = -2.0; rho <= 2.0 + 1e-12; rho += 0.25)
                for (double frac = 0.0; frac <= 1.0 + 1e-12; frac += 0.05) {
                    if (!rw::si_bound_check(rho, L, frac * L)) ok = false;
                }
        out.add("si_bound_grid", ok);
    }
    {
        const double a = 2.0, b = 5.0;
        const bool ok = std::abs(rw::q_ab(a, b, a)) < 1e-15 && std::abs(rw::q_ab(a, b, b)) < 1e-15 &&
                        std::abs(rw::q_ab(a, b, 0.5 * (a + b)) - 2.0) < 1e-12;
        out.add("q_ab_endpoint_midpoint", ok);
    }
    {
        // resolvent: degenerate cases and MC vs bound at the pinned point
        rw::WalkMcRequest req;
        req.x0 = 10.0;
        req.L = 60.0;
        req.rho = 0.0;
        req.reps = std::max<std::int64_t>(opts.mc_paths / 5, 20000);
        req.want_resolvent = true;
        req.cell_a = 20.0;
        req.cell_b = 20.5;
        SplitMix64 rng(key_combine(opts.seed, 0x56uLL));
        const auto st = laplace_walk_mc(req, rng);
        const double bound = rw::resolvent_bound(req.cell_a, req.cell_b, req.x0);
        bool ok = st.resolvent.mean() <= bound + 3.0 * st.resolvent.sem();
        ok = ok && rw::resolvent_bound(3.0, 3.0, 5.0) == 0.0;
        rw::WalkMcRequest deg = req;
        deg.rho = -1.0;
        deg.reps = 2000;
        SplitMix64 rng2(key_combine(opts.seed, 0x57uLL));
        const auto st2 = laplace_walk_mc(deg, rng2);
        ok = ok && st2.resolvent.mean() == 0.0;
        out.add("resolvent_mc_le_bound", ok,
                "mc=" + num(st.resolvent.mean()) + " bound=" + num(bound));
    }
    {
        rw::WalkMcRequest req;
        req.x0 = 8.0;
        req.L = 40.0;
        req.rho = 0.0;
        req.reps = std::max<std::int64_t>(opts.mc_paths / 5, 20000);
        req.want_f_ab = true;
        req.cell_a = 5.0;
        req.cell_b = 6.0;
        SplitMix64 rng(key_combine(opts.seed, 0x58uLL));
        const auto st = laplace_walk_mc(req, rng);
        const double bound = rw::f_ab_bound(req.cell_a, req.cell_b, req.x0, req.rho, req.L);
        bool ok = st.f_ab.mean() <= bound + 3.0 * st.f_ab.sem();
        // rho = -1 degenerate: F equals Q(x) exactly
        rw::WalkMcRequest deg = req;
        deg.rho = -1.0;
        deg.reps = 1000;
        deg.x0 = 5.5;
        SplitMix64 rng2(key_combine(opts.seed, 0x59uLL));
        const auto st2 = laplace_walk_mc(deg, rng2);
        ok = ok && std::abs(st2.f_ab.mean() - rw::q_ab(5.0, 6.0, 5.5)) < 1e-12;
        // positive-rho bound at a small rho inside (0, rho*_L)
        rw::WalkMcRequest pos = req;
        pos.rho = 0.3 * rw::rho_star(req.L);
        SplitMix64 rng3(key_combine(opts.seed, 0x5AuLL));
        const auto st3 = laplace_walk_mc(pos, rng3);
        const double bound_pos = rw::f_ab_bound(pos.cell_a, pos.cell_b, pos.x0, pos.rho, pos.L);
        ok = ok && st3.f_ab.mean() <= bound_pos + 3.0 * st3.f_ab.sem();
        out.add("f_ab_mc_le_bound", ok, "mc=" + num(st.f_ab.mean()) + " bound=" + num(bound));
    }

    // --- predictor coherence ------------------------------------------------
    {
        bool ok = true;
        for (const double gamma : {0.0, 0.3})
            for (const double K : {30.0, 60.0})
                for (const double x : {0.0, K / 2.0}) {
                    const double bc = critical_beta(gamma);
                    for (const double beta : {bc, bc * 1.001}) {
                        const double pred = rw::first_moment_predictor(gamma, beta, K, x);
                        const double exact = rw::progeny_mean_exact(gamma, beta, K, x);
                        const double ratio = pred / exact;
                        ok = ok && ratio >= 0.5 && ratio <= 2.0;
                    }
                }
        out.add("first_moment_predictor_vs_exact_h", ok);
    }
    {
        bool ok = true;
        ok = ok && rw::si_ratio(-0.01, 1e6) >= 1.0;
        ok = ok && std::abs(rw::si_ratio(0.0, 1e6) - 1.0) < 1e-12;
        // along the admissible sequence rho_n = (pi^2/2)/(log n)^2 the ratio
        // climbs to 1 (0.8657 at n=1e6, above 0.9 from n ~ 1e9 on)
        double prev = 0.0;
        for (const double n : {1e6, 1e9, 1e12}) {
            const double ln = std::log(n);
            const double r = rw::si_ratio(0.5 * pi * pi / (ln * ln), n);
            ok = ok && r > prev;
            prev = r;
        }
        ok = ok && prev > 0.9;
        out.add("si_ratio_checks", ok);
    }

    // --- second-moment envelope: shape stability, never absolute values ----
    {
        const double gamma = 0.0, K = 8.0;
        const double beta = critical_beta(gamma);
        const OffspringIntensity mu{gamma, beta};
        SplitMix64 rng(key_combine(opts.seed, 0x5BuLL));
        GrowCaps caps;
        caps.max_particles = 1 << 22;
        double rmin = 1e300, rmax = 0.0;
        bool ok = true;
        for (const double x : {0.0, K / 4.0, K / 2.0}) {
            MeanVar t2, t1;
            const std::int64_t reps = std::max<std::int64_t>(opts.brw_reps / 4, 5000);
            for (std::int64_t r = 0; r < reps; ++r) {
                const BrwTree tree = grow_tree(mu, x, 0.0, K, nullptr, caps, rng);
                const double T = static_cast<double>(tree.progeny());
                t1.add(T);
                t2.add(T * T);
            }
            ok = ok && t2.mean() >= t1.mean() * t1.mean() * 0.99;  // Jensen sanity
            const double ratio = t2.mean() / rw::second_moment_envelope(gamma, beta, K, x);
            rmin = std::min(rmin, ratio);
            rmax = std::max(rmax, ratio);
        }
        ok = ok && rmin > 0.0 && rmax / rmin < 25.0;
        out.add("second_moment_envelope_shape", ok,
                "ratio range [" + num(rmin) + ", " + num(rmax) + "]");
    }

    // --- many-to-one: BRW vs spine ------------------------------------------
    {
        bool ok = true;
        std::string detail;
        for (const double gamma : {0.0, 0.3}) {
            const double bc = critical_beta(gamma);
            const auto res = many_to_one_check(gamma, bc, 8.0, 0.0, 6, opts.brw_reps,
                                               key_combine(opts.seed, 0x5CuLL));
            ok = ok && res.within(3.0);
            detail += "g=" + num(gamma) + ": brw=" + num(res.brw_mean) +
                      " rw=" + num(res.rw_mean) + "  ";
        }
        out.add("many_to_one_identity", ok, detail);
    }

    return out.checks;
}

}  // namespace critwin
