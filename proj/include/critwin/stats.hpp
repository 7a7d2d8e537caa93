#pragma once

// Running-moment accumulators and small-sample interval helpers shared by the
// Monte Carlo estimators and the experiment harness.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace critwin {

// Welford mean/variance accumulator with pooled merge.
class MeanVar {
  public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }

    void merge(const MeanVar& o) {
        if (o.n_ == 0) return;
        if (n_ == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n_), nb = static_cast<double>(o.n_);
        const double d = o.mean_ - mean_;
        m2_ += o.m2_ + d * d * na * nb / (na + nb);
        mean_ = (na * mean_ + nb * o.mean_) / (na + nb);
        n_ += o.n_;
    }

    std::int64_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double stddev() const { return std::sqrt(variance()); }
    double sem() const {
        return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
    }

  private:
    std::int64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

// Two-sided 97.5% Student-t quantile, for 95% confidence half-widths from
// batch means over seeds. Exact table for small df, 1.96 beyond.
inline double t_quantile_975(std::int64_t df) {
    static const double table[] = {0.0,   12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365,
                                   2.306, 2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131,
                                   2.120, 2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069,
                                   2.064, 2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
    if (df <= 0) return 0.0;
    if (df <= 30) return table[df];
    if (df <= 40) return 2.021;
    if (df <= 60) return 2.000;
    if (df <= 120) return 1.980;
    return 1.96;
}

// 95% half-width from per-seed batch means.
inline double half_width_95(const MeanVar& mv) {
    if (mv.count() < 2) return 0.0;
    return t_quantile_975(mv.count() - 1) * mv.sem();
}

inline double median_of(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median_of: empty");
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size() / 2;
    if (v.size() % 2 == 1) return v[k];
    return 0.5 * (v[k - 1] + v[k]);
}

// Lower/upper quartiles by the nearest-rank rule.
inline std::pair<double, double> quartiles_of(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("quartiles_of: empty");
    std::sort(v.begin(), v.end());
    const auto pick = [&](double q) {
        const double idx = q * static_cast<double>(v.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(idx);
        const std::size_t hi = std::min(lo + 1, v.size() - 1);
        const double frac = idx - static_cast<double>(lo);
        return v[lo] * (1.0 - frac) + v[hi] * frac;
    };
    return {pick(0.25), pick(0.75)};
}

}  // namespace critwin
