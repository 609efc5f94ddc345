#include "kljn/noise.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "kljn/errors.hpp"

namespace kljn {

void NoiseSpec::validate() const
{
    if (!std::isfinite(psd_level) || !std::isfinite(bandwidth) || !std::isfinite(sample_rate))
        throw ConfigError("noise: parameters must be finite");
    if (psd_level < 0.0)
        throw ConfigError("noise: psd_level must be >= 0");
    if (bandwidth <= 0.0)
        throw ConfigError("noise: bandwidth must be > 0");
    if (sample_rate < 2.0 * bandwidth)
        throw ConfigError("noise: sample_rate " + std::to_string(sample_rate) + " is below 2*bandwidth (aliasing)");
    if (n_samples < 2)
        throw ConfigError("noise: n_samples must be >= 2");
}

Waveform::Waveform(std::vector<double> samples, double sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate)
{
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
        throw ConfigError("waveform: sample_rate must be positive and finite");
}

void Waveform::check_finite() const
{
    for (double x : samples_)
        if (!std::isfinite(x))
            throw ConfigError("waveform: non-finite sample");
}

double in_band_weight(std::size_t k, std::size_t n, double bandwidth, double sample_rate)
{
    const double df = sample_rate / static_cast<double>(n);
    const double center = static_cast<double>(k) * df;
    if (n % 2 == 0 && k == n / 2) {
        // The Nyquist bin collects both spectral edges.
        const double lo = center - 0.5 * df;
        return 2.0 * std::clamp((std::min(bandwidth, center) - lo) / df, 0.0, 0.5);
    }
    const double lo = std::max(center - 0.5 * df, -bandwidth);
    const double hi = std::min(center + 0.5 * df, bandwidth);
    return std::max(0.0, hi - lo) / df;
}

void synth_band_limited_into(const NoiseSpec& spec, RandomEngine& rng, std::span<double> out)
{
    spec.validate();
    if (out.size() != spec.n_samples)
        throw ConfigError("noise: output buffer size mismatch");
    if (spec.psd_level == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }

    const std::size_t n = spec.n_samples;
    const std::size_t half = n / 2;
    const double df = spec.sample_rate / static_cast<double>(n);
    const double two_sided = 0.5 * spec.psd_level;

    thread_local std::vector<std::complex<double>> coeffs;
    coeffs.assign(half + 1, {0.0, 0.0});
    std::normal_distribution<double> gauss(0.0, 1.0);

    for (std::size_t k = 0; k <= half; ++k) {
        const double w = in_band_weight(k, n, spec.bandwidth, spec.sample_rate);
        if (w <= 0.0)
            continue;
        const double power = w * two_sided * df;
        const bool real_only = k == 0 || (n % 2 == 0 && k == half);
        if (real_only) {
            coeffs[k] = {std::sqrt(power) * gauss(rng), 0.0};
        } else {
            const double sd = std::sqrt(0.5 * power);
            const double re = gauss(rng);
            const double im = gauss(rng);
            coeffs[k] = {sd * re, sd * im};
        }
    }
    detail::inverse_real_fft(coeffs, out);
}

Waveform synth_band_limited(const NoiseSpec& spec, RandomEngine& rng)
{
    spec.validate();
    std::vector<double> samples(spec.n_samples);
    synth_band_limited_into(spec, rng, samples);
    return Waveform(std::move(samples), spec.sample_rate);
}

std::vector<SpectrumBin> periodogram(const Waveform& w, std::size_t n_bins)
{
    if (w.empty())
        throw ConfigError("periodogram: empty waveform");
    if (n_bins < 2)
        throw ConfigError("periodogram: n_bins must be >= 2");
    const std::size_t len = w.size();
    if (len < 2 * n_bins)
        throw ConfigError("periodogram: waveform shorter than 2*n_bins");

    // Several FFT bins per output bin keep Hann leakage of a tone or DC inside one output bin.
    std::size_t per_bin = 1;
    for (std::size_t m : {4u, 2u}) {
        if (2 * n_bins * m <= len) {
            per_bin = m;
            break;
        }
    }
    const std::size_t nseg = 2 * n_bins * per_bin;
    const std::size_t step = nseg / 2;
    const std::size_t n_segments = (len - nseg) / step + 1;
    const std::size_t n_fft_bins = nseg / 2 + 1;

    std::vector<double> window(nseg);
    double window_power = 0.0;
    for (std::size_t t = 0; t < nseg; ++t) {
        window[t] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(nseg));
        window_power += window[t] * window[t];
    }

    std::vector<double> accum(n_fft_bins, 0.0);
    std::vector<double> segment(nseg);
    std::vector<std::complex<double>> spectrum(n_fft_bins);
    const auto x = w.samples();
    for (std::size_t s = 0; s < n_segments; ++s) {
        const std::size_t start = s * step;
        for (std::size_t t = 0; t < nseg; ++t)
            segment[t] = window[t] * x[start + t];
        detail::forward_real_fft(segment, spectrum);
        for (std::size_t k = 0; k < n_fft_bins; ++k)
            accum[k] += std::norm(spectrum[k]);
    }

    const double fs = w.sample_rate();
    const double df = fs / static_cast<double>(nseg);
    const double scale = 1.0 / (fs * window_power * static_cast<double>(n_segments));
    const double bin_width = 0.5 * fs / static_cast<double>(n_bins);

    std::vector<SpectrumBin> out(n_bins);
    for (std::size_t j = 0; j < n_bins; ++j) {
        out[j].f_low = static_cast<double>(j) * bin_width;
        out[j].f_high = static_cast<double>(j + 1) * bin_width;
    }
    for (std::size_t k = 0; k < n_fft_bins; ++k) {
        const bool edge = k == 0 || k == n_fft_bins - 1;
        const double density = (edge ? 1.0 : 2.0) * accum[k] * scale;
        const std::size_t j = std::min(k / per_bin, n_bins - 1);
        out[j].density += density * df;
    }
    for (auto& bin : out)
        bin.density /= bin_width;
    return out;
}

double total_power(std::span<const SpectrumBin> spectrum) noexcept
{
    double sum = 0.0;
    for (const auto& bin : spectrum)
        sum += bin.power();
    return sum;
}

} // namespace kljn
