#pragma once

// Test-only statistics. Kept independent of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace kljn::testing {

inline double mean(std::span<const double> x)
{
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

inline double variance(std::span<const double> x)
{
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x)
        ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

inline double stddev(std::span<const double> x) { return std::sqrt(variance(x)); }

inline double excess_kurtosis(std::span<const double> x)
{
    const double m = mean(x);
    double m2 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = (v - m) * (v - m);
        m2 += d;
        m4 += d * d;
    }
    const double n = static_cast<double>(x.size());
    m2 /= n;
    m4 /= n;
    return m4 / (m2 * m2) - 3.0;
}

/// Means of `n_batches` contiguous batches of x^2, for a batched standard error.
inline std::vector<double> batch_mean_squares(std::span<const double> x, std::size_t n_batches)
{
    const std::size_t len = x.size() / n_batches;
    std::vector<double> out(n_batches, 0.0);
    for (std::size_t b = 0; b < n_batches; ++b) {
        for (std::size_t t = 0; t < len; ++t)
            out[b] += x[b * len + t] * x[b * len + t];
        out[b] /= static_cast<double>(len);
    }
    return out;
}

inline double pearson(std::span<const double> x, std::span<const double> y)
{
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Kolmogorov-Smirnov distance of standardized samples from N(0,1).
inline double ks_normal_statistic(std::vector<double> x)
{
    const double m = mean(x), s = stddev(x);
    for (double& v : x)
        v = (v - m) / s;
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = normal_cdf(x[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

/// Upward crossings of `level` in a sampled sequence.
inline std::size_t count_upcrossings(std::span<const double> x, double level)
{
    std::size_t count = 0;
    for (std::size_t t = 1; t < x.size(); ++t)
        count += x[t - 1] < level && x[t] >= level;
    return count;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Weighted least squares y = a + b x.
inline LineFit weighted_line_fit(std::span<const double> x, std::span<const double> y, std::span<const double> w)
{
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
        sxx += w[i] * x[i] * x[i];
        sxy += w[i] * x[i] * y[i];
    }
    const double det = sw * sxx - sx * sx;
    LineFit fit;
    fit.slope = (sw * sxy - sx * sy) / det;
    fit.intercept = (sxx * sy - sx * sxy) / det;
    return fit;
}

} // namespace kljn::testing
