#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kljn/noise.hpp"

namespace kljn {

/// Finite-time averaging window. `f_b` is the equivalent noise bandwidth of the block mean,
/// so a block of duration tau has f_b = 1/(2 tau) and gamma = bandwidth / f_b.
struct AveragingWindow {
    double gamma = 100.0;
    double bandwidth = 1.0;

    static AveragingWindow from_gamma(double gamma, double bandwidth);

    double f_b() const noexcept { return bandwidth / gamma; }
    double tau() const noexcept { return gamma / (2.0 * bandwidth); }

    void validate() const;
    /// gamma < 10 leaves the rare-crossing and flat-spectrum approximations unreliable.
    bool approximations_valid() const noexcept { return gamma >= 10.0; }
    std::vector<std::string> warnings() const;
};

/// Per-period mean squares of the channel voltage and current.
struct Measurement {
    double msv = 0.0;
    double msi = 0.0;

    bool operator==(const Measurement&) const = default;
};

double finite_mean_square(std::span<const double> samples);
double finite_mean_square(const Waveform& w);

/// One-sided PSD of the AC part of q*x^2(t) for x with flat PSD `s_level` on [0, bandwidth].
double squared_noise_psd_theory(double f, double s_level, double bandwidth, double q = 1.0);

/// Same density integrated over [f_low, f_high].
double squared_noise_power_theory(double f_low, double f_high, double s_level, double bandwidth, double q = 1.0);

/// RMS of the residual fluctuation after finite-time averaging: q * s_level * f_b * sqrt(2 gamma).
double averaged_fluctuation_rms(double s_level, const AveragingWindow& window, double q = 1.0);

} // namespace kljn
