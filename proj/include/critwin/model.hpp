#pragma once

// Model parameters, connection kernels, critical values and the critical
// window parametrization of the gamma-growing random graph.
//
// A run is fully specified by ModelParams; resolve() turns it into the
// mutually consistent WindowPoint (alpha, beta, beta_c, n). Natural logarithm
// is used throughout the window parametrization.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace critwin {

enum class Kernel {
    polynomial,         // p_ij = min(beta * i^-g * j^(g-1), 1)
    exponential_lower,  // p_ij = 1 - exp(-beta * i^-g * j^(g-1))
};

inline const char* kernel_name(Kernel k) {
    return k == Kernel::polynomial ? "polynomial" : "exponential_lower";
}

inline Kernel kernel_from_name(const std::string& s) {
    if (s == "polynomial") return Kernel::polynomial;
    if (s == "exponential_lower") return Kernel::exponential_lower;
    throw std::invalid_argument("unknown kernel: " + s);
}

// beta_c(gamma) = max(1/4 - gamma/2, 0); positive iff gamma < 1/2.
inline double critical_beta(double gamma) {
    if (!(gamma < 1.0)) throw std::invalid_argument("critical_beta: gamma must be < 1");
    const double b = 0.25 - 0.5 * gamma;
    return b > 0.0 ? b : 0.0;
}

struct BetaSpec {
    enum class Mode { absolute, window };
    Mode mode = Mode::absolute;
    double value = 0.0;  // beta if absolute, alpha if window

    static BetaSpec absolute(double beta) { return {Mode::absolute, beta}; }
    static BetaSpec window(double alpha) { return {Mode::window, alpha}; }
};

struct ModelParams {
    double gamma = 0.0;
    std::int64_t n = 1;
    BetaSpec beta_spec = BetaSpec::absolute(0.25);
    Kernel kernel = Kernel::polynomial;
};

// alpha and beta are mutually consistent: alpha = 4 beta_c (beta - beta_c) (log n)^2.
struct WindowPoint {
    double alpha = 0.0;
    double beta = 0.0;
    double beta_c = 0.0;
    std::int64_t n = 1;
};

// Fully resolved parameters, the form consumed by samplers.
struct ResolvedParams {
    double gamma = 0.0;
    std::int64_t n = 1;
    double beta = 0.0;
    double beta_c = 0.0;
    double alpha = 0.0;
    Kernel kernel = Kernel::polynomial;
};

inline WindowPoint resolve_beta(const ModelParams& p) {
    if (!(p.gamma >= 0.0 && p.gamma < 0.5))
        throw std::invalid_argument("resolve_beta: gamma must lie in [0, 1/2)");
    if (p.n < 1) throw std::invalid_argument("resolve_beta: n must be >= 1");
    const double bc = critical_beta(p.gamma);
    WindowPoint w;
    w.n = p.n;
    w.beta_c = bc;
    if (p.beta_spec.mode == BetaSpec::Mode::absolute) {
        w.beta = p.beta_spec.value;
        if (!(w.beta > 0.0)) throw std::invalid_argument("resolve_beta: beta must be > 0");
        const double ln = std::log(static_cast<double>(p.n));
        w.alpha = 4.0 * bc * (w.beta - bc) * ln * ln;
    } else {
        if (p.n < 2) throw std::invalid_argument("resolve_beta: window mode needs n >= 2");
        if (!(bc > 0.0))
            throw std::invalid_argument("resolve_beta: window mode needs beta_c > 0 (gamma < 1/2)");
        const double ln = std::log(static_cast<double>(p.n));
        w.alpha = p.beta_spec.value;
        w.beta = bc + w.alpha / (4.0 * bc * ln * ln);
        if (!(w.beta > 0.0))
            throw std::invalid_argument("resolve_beta: alpha so negative that beta <= 0");
    }
    // the exponential_lower kernel is only a valid member of the admissible
    // connection-probability range for beta in (0, 1/2]
    if (p.kernel == Kernel::exponential_lower && w.beta > 0.5)
        throw std::invalid_argument("resolve_beta: exponential_lower kernel needs beta <= 1/2");
    return w;
}

inline ResolvedParams resolve(const ModelParams& p) {
    const WindowPoint w = resolve_beta(p);
    return ResolvedParams{p.gamma, p.n, w.beta, w.beta_c, w.alpha, p.kernel};
}

// Connection probability of the pair {i, j}, 1 <= i < j.
inline double connection_probability(std::int64_t i, std::int64_t j, double gamma, double beta,
                                     Kernel kernel) {
    if (!(i >= 1 && i < j)) throw std::invalid_argument("connection_probability: need 1 <= i < j");
    const double w = beta * std::pow(static_cast<double>(i), -gamma) *
                     std::pow(static_cast<double>(j), gamma - 1.0);
    if (kernel == Kernel::polynomial) return w < 1.0 ? w : 1.0;
    return -std::expm1(-w);
}

inline double connection_probability(std::int64_t i, std::int64_t j, const ModelParams& p) {
    if (j > p.n) throw std::invalid_argument("connection_probability: j exceeds n");
    const ResolvedParams r = resolve(p);
    return connection_probability(i, j, r.gamma, r.beta, r.kernel);
}

inline double connection_probability(std::int64_t i, std::int64_t j, const ResolvedParams& r) {
    return connection_probability(i, j, r.gamma, r.beta, r.kernel);
}

// Asymptotic predictors for the off-window regimes. These drop o(1) terms
// and are exploratory, not exact values; they live in their own
// namespace so they cannot be mistaken for exact quantities.
namespace asymptotic {

// Exponent rho of the polynomial largest-component size n^rho in the
// subcritical phase: rho = 1/2 - sqrt(4 beta_c (beta_c - beta)) > gamma.
inline double subcritical_exponent(double gamma, double beta) {
    const double bc = critical_beta(gamma);
    if (!(beta > 0.0 && beta < bc))
        throw std::invalid_argument("subcritical_exponent: need 0 < beta < beta_c");
    return 0.5 - std::sqrt(4.0 * bc * (bc - beta));
}

// Infinite-order transition predictor for the giant-component density just
// above beta_c: theta ~ exp(-(pi/2)/sqrt(4 beta_c (beta - beta_c))).
inline double theta_supercritical(double gamma, double beta) {
    const double bc = critical_beta(gamma);
    if (!(bc > 0.0 && beta > bc))
        throw std::invalid_argument("theta_supercritical: need beta > beta_c > 0");
    const double pi = 3.14159265358979323846;
    return std::exp(-(pi / 2.0) / std::sqrt(4.0 * bc * (beta - bc)));
}

}  // namespace asymptotic

}  // namespace critwin
