#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kljn/random.hpp"

namespace kljn {

/// Band-limited white noise request. `psd_level` is one-sided (V^2/Hz).
struct NoiseSpec {
    double psd_level = 0.0;
    double bandwidth = 1.0;
    double sample_rate = 4.0;
    std::size_t n_samples = 0;

    void validate() const;
};

/// Uniformly sampled real signal.
class Waveform {
public:
    Waveform() = default;
    Waveform(std::vector<double> samples, double sample_rate);

    std::span<const double> samples() const noexcept { return samples_; }
    std::span<double> samples() noexcept { return samples_; }
    double sample_rate() const noexcept { return sample_rate_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    double duration() const noexcept { return static_cast<double>(samples_.size()) / sample_rate_; }

    /// Throws ConfigError if any sample is NaN or infinite.
    void check_finite() const;

private:
    std::vector<double> samples_;
    double sample_rate_ = 1.0;
};

/// Fraction of the two-sided DFT bin `k` (of an `n`-point transform) that lies inside [-bandwidth, bandwidth].
double in_band_weight(std::size_t k, std::size_t n, double bandwidth, double sample_rate);

/// Frequency-domain synthesis: independent complex Gaussian coefficients with variance proportional
/// to the in-band weight of each bin, followed by an inverse real FFT. The block is circular, so its
/// mean square is exactly a weighted sum of independent squared Gaussians with expectation psd*B.
Waveform synth_band_limited(const NoiseSpec& spec, RandomEngine& rng);

/// Same as above, writing into caller storage of size spec.n_samples (no allocation for the output).
void synth_band_limited_into(const NoiseSpec& spec, RandomEngine& rng, std::span<double> out);

struct SpectrumBin {
    double f_low = 0.0;
    double f_high = 0.0;
    double density = 0.0; // mean one-sided power density over the bin

    double center() const noexcept { return 0.5 * (f_low + f_high); }
    double power() const noexcept { return density * (f_high - f_low); }
};

/// Welch estimate (Hann window, 50% overlap) of the one-sided power density, grouped into `n_bins`
/// equal bins spanning [0, f_s/2]. The mean is not removed, so the integral equals the mean square.
std::vector<SpectrumBin> periodogram(const Waveform& w, std::size_t n_bins);

double total_power(std::span<const SpectrumBin> spectrum) noexcept;

} // namespace kljn
