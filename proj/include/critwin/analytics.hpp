#pragma once

// Closed-form analytic layer for the Laplacian random walk killed outside an
// interval: the Si/Co window functions, the hitting-time PGF and its blow-up
// point rho*_L, the exact solution of the weighted occupation sums H^+/H^-,
// moment predictors for the killed BRW progeny, and the inequality bounds
// used by the verification suite.
//
// Units: the walk lives in "RW units". BRW-scale positions x convert via
// x_rw = 2 beta_c x; the progeny wrappers at the bottom do this internally.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace critwin::rw {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSeriesCutoff = 1e-8;  // |alpha| below which the shared series is used

// Si(alpha, y): sin(sqrt(a) y)/sqrt(a) for a>0, y at 0, sinh(sqrt(|a|) y)/sqrt(|a|) for a<0.
// The |alpha| < 1e-8 region uses the shared series y (1 - a y^2/6 + a^2 y^4/120),
// valid on both sides of zero.
inline double si_xy(double alpha, double y) {
    if (std::abs(alpha) < kSeriesCutoff) {
        const double ay2 = alpha * y * y;
        return y * (1.0 - ay2 / 6.0 + ay2 * ay2 / 120.0);
    }
    const double r = std::sqrt(std::abs(alpha));
    if (alpha > 0.0) return std::sin(r * y) / r;
    return std::sinh(r * y) / r;
}

inline double co_xy(double alpha, double y) {
    if (std::abs(alpha) < kSeriesCutoff) {
        const double ay2 = alpha * y * y;
        return 1.0 - ay2 / 2.0 + ay2 * ay2 / 24.0;
    }
    const double r = std::sqrt(std::abs(alpha));
    if (alpha > 0.0) return std::cos(r * y);
    return std::cosh(r * y);
}

inline double si(double alpha) { return si_xy(alpha, 1.0); }

// Smallest positive root of cos(sqrt(rho) L/2) - sqrt(rho) sin(sqrt(rho) L/2) = 0,
// the radius-of-convergence parameter of the hitting-time PGF. The root in
// theta = sqrt(rho) lies in (0, pi/L]: the defining function is 1 at theta=0+
// and -pi/L at theta=pi/L. Bisection to 1e-12 relative on theta.
inline double rho_star(double L) {
    if (!(L > 0.0)) throw std::invalid_argument("rho_star: L must be > 0");
    const auto f = [L](double t) { return std::cos(t * L / 2.0) - t * std::sin(t * L / 2.0); };
    double lo = 0.0;
    double hi = kPi / L;
    // f(lo)=1 > 0 and f(hi) = -pi/L < 0
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-12 * hi) break;
    }
    const double t = 0.5 * (lo + hi);
    return t * t;
}

// E_{L/2}[(1+rho)^{tau_L}]. Returns +infinity (in-band) for rho >= rho*_L.
inline double hitting_pgf(double rho, double L) {
    if (!(L > 0.0)) throw std::invalid_argument("hitting_pgf: L must be > 0");
    if (rho < -1.0) throw std::invalid_argument("hitting_pgf: rho must be >= -1");
    if (rho <= 0.0) {
        const double r = std::sqrt(-rho);
        return (1.0 + rho) / (std::cosh(r * L / 2.0) + r * std::sinh(r * L / 2.0));
    }
    if (rho >= rho_star(L)) return std::numeric_limits<double>::infinity();
    const double r = std::sqrt(rho);
    return (1.0 + rho) / (std::cos(r * L / 2.0) - r * std::sin(r * L / 2.0));
}

// Exact solution of H_b^+(x, rho, L) = E_x[ sum_{k<tau_L} (1+rho)^k e^{b S_k} ]
// for b > 0 and -1 <= rho < rho*_L. At rho = -1 only the k=0 term survives.
inline double h_plus(double b, double x, double rho, double L) {
    if (!(b > 0.0)) throw std::invalid_argument("h_plus: b must be > 0");
    if (!(L > 0.0)) throw std::invalid_argument("h_plus: L must be > 0");
    if (!(x >= 0.0 && x <= L)) throw std::invalid_argument("h_plus: x must lie in [0, L]");
    if (rho < -1.0) throw std::invalid_argument("h_plus: rho must be >= -1");
    if (rho == -1.0) return std::exp(b * x);
    if (rho > 0.0 && rho >= rho_star(L)) return std::numeric_limits<double>::infinity();
    const double al = rho * L * L;
    const double y = x / L;
    const double den = (1.0 - rho) * si_xy(al, 1.0) + 2.0 / L * co_xy(al, 1.0);
    const double up = (1.0 + b) * (si_xy(al, y) + co_xy(al, y) / L) / den * std::exp(b * L);
    const double down = (b - 1.0) * (si_xy(al, 1.0 - y) + co_xy(al, 1.0 - y) / L) / den;
    return (1.0 + rho) / (b * b + rho) * (up - down) +
           (b * b - 1.0) / (b * b + rho) * std::exp(b * x);
}

// Reflection identity H_b^-(x, rho, L) = e^{-Lb} H_b^+(L-x, rho, L).
inline double h_minus(double b, double x, double rho, double L) {
    return std::exp(-L * b) * h_plus(b, L - x, rho, L);
}

// Coordinate bridge between BRW scale and RW scale; the proofs substitute
// L -> 2 beta_c L throughout.
inline double to_rw_scale(double x_brw, double beta_c) { return 2.0 * beta_c * x_brw; }
inline double to_brw_scale(double x_rw, double beta_c) { return x_rw / (2.0 * beta_c); }

// Exact mean progeny of the gamma-BRW killed outside [0, K], root at x, via
// the many-to-one identity: E_x[T_{[0,K]}] = e^{-x/2} H^+_{1/(4bc)}(2bc x, beta/bc - 1, 2bc K).
inline double progeny_mean_exact(double gamma, double beta, double K, double x) {
    if (!(gamma >= 0.0 && gamma < 0.5))
        throw std::invalid_argument("progeny_mean_exact: gamma must lie in [0, 1/2)");
    const double bc = 0.25 - 0.5 * gamma;
    return std::exp(-x / 2.0) *
           h_plus(1.0 / (4.0 * bc), to_rw_scale(x, bc), beta / bc - 1.0, to_rw_scale(K, bc));
}

inline constexpr double kWindowMargin = 1e-6;

// Asymptotic pivot of the first-moment estimate: the quantity the mean
// progeny is squeezed against up to (1 +- eps). The leading coefficient is
// 4 bc (1 + 4 bc), i.e. (1+b)/b^2 at b = 1/(4 bc) after the RW change of
// variables; it reduces to (1 + 4 bc) at gamma = 0. Diverges as the window
// coordinate approaches pi^2; returns +infinity past pi^2 - margin.
inline double first_moment_predictor(double gamma, double beta, double K, double x) {
    if (!(gamma >= 0.0 && gamma < 0.5))
        throw std::invalid_argument("first_moment_predictor: gamma must lie in [0, 1/2)");
    if (!(x >= 0.0 && x <= K)) throw std::invalid_argument("first_moment_predictor: x in [0, K]");
    const double bc = 0.25 - 0.5 * gamma;
    const double aK = 4.0 * bc * (beta - bc) * K * K;
    if (aK >= kPi * kPi - kWindowMargin) return std::numeric_limits<double>::infinity();
    const double num = si_xy(aK, x / K) + 1.0 / (2.0 * bc * K);
    return 4.0 * bc * (1.0 + 4.0 * bc) * num / si_xy(aK, 1.0) * std::exp((K - x) / 2.0) + 1.0 -
           (4.0 * bc) * (4.0 * bc);
}

// Second-moment envelope WITHOUT the unknown constant C; callers compare
// shapes and ratios only, never absolute values.
inline double second_moment_envelope(double gamma, double beta, double K, double x) {
    if (!(gamma >= 0.0 && gamma < 0.5))
        throw std::invalid_argument("second_moment_envelope: gamma must lie in [0, 1/2)");
    if (!(x >= 0.0 && x <= K)) throw std::invalid_argument("second_moment_envelope: x in [0, K]");
    const double bc = 0.25 - 0.5 * gamma;
    const double aK = 4.0 * bc * (beta - bc) * K * K;
    if (aK >= kPi * kPi - kWindowMargin) return std::numeric_limits<double>::infinity();
    const double s1 = si_xy(aK, 1.0);
    return (si_xy(aK, 1.0 - x / K) + 1.0 / K) / (K * K * s1 * s1 * s1) * std::exp(K - x / 2.0);
}

// Alpha-independent envelope for Si/Co:
//   Si(rho L^2, x/L) <= (x/L) (2 + 1_{rho<0} e^{sqrt(|rho|) x}),
//   Co(rho L^2, x/L) <= 1_{rho>=0} + 1_{rho<0} e^{sqrt(|rho|) x}.
inline bool si_bound_check(double rho, double L, double x) {
    const double e = std::exp(std::sqrt(std::abs(rho)) * x);
    const double si_bound = x / L * (2.0 + (rho < 0.0 ? e : 0.0));
    const double co_bound = rho < 0.0 ? e : 1.0;
    return si_xy(rho * L * L, x / L) <= si_bound && co_xy(rho * L * L, x / L) <= co_bound;
}

// Smoothed cell indicator Q_{a,b} and the closed-form upper bounds on its
// discounted occupation sum F_{a,b}.
inline double q_ab(double a, double b, double x) {
    if (!(b > a)) throw std::invalid_argument("q_ab: need b > a");
    if (x < a || x > b) return 0.0;
    return 1.0 - std::cos(2.0 * kPi * (x - a) / (b - a));
}

inline double f_ab_bound(double a, double b, double x, double rho, double L) {
    if (!(b > a)) throw std::invalid_argument("f_ab_bound: need b > a");
    if (rho <= 0.0) return (b - a) * (x + 1.0) + q_ab(a, b, x);
    const double w2 = 4.0 * kPi * kPi / ((b - a) * (b - a));
    if (!(rho < w2)) throw std::invalid_argument("f_ab_bound: need rho < 4 pi^2/(b-a)^2");
    const double al = rho * L * L;
    const double factor = (1.0 + rho) * (w2 / (w2 - rho)) * (si(al) + (b + 1.0) / L) /
                          ((1.0 - rho) * si(al) + 2.0 * co_xy(al, 1.0) / L);
    return (b - a) * factor * (x + 1.0) + q_ab(a, b, x);
}

// Resolvent upper bound for cells of width at most 1: R_[a,b](x, rho, K) <= 3 (b-a)(b+2)(x+2).
inline double resolvent_bound(double a, double b, double x) {
    if (!(b >= a)) throw std::invalid_argument("resolvent_bound: need b >= a");
    return 3.0 * (b - a) * (b + 2.0) * (x + 2.0);
}

// Si(rho_n (log 2n)^2) / Si(rho_n (log n)^2); at least 1 for rho_n <= 0.
inline double si_ratio(double rho_n, double n) {
    if (!(n >= 2.0)) throw std::invalid_argument("si_ratio: n must be >= 2");
    const double l1 = std::log(2.0 * n);
    const double l2 = std::log(n);
    return si(rho_n * l1 * l1) / si(rho_n * l2 * l2);
}

}  // namespace critwin::rw
