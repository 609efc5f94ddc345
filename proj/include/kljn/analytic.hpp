#pragma once

#include <string>
#include <vector>

#include "kljn/estimator.hpp"

namespace kljn {

struct ThresholdFractions {
    double beta = 0.5;   // guards the voltage 00 level
    double delta = 0.5;  // guards the voltage 11 level
    double lambda = 0.5; // guards the current 11 level
    double rho = 0.5;    // guards the current 00 level

    void validate() const;
};

/// Closed-form probability with a flag that is false outside the rare-crossing regime (gamma < 10).
struct Probability {
    double value = 0.0;
    bool valid = true;
};

/// Mean level-crossing frequency of a zero-mean stationary Gaussian process (both directions).
/// `spectrum_moment` is sqrt(integral f^2 S(f) df).
double rice_rate(double threshold, double rms, double spectrum_moment);

/// Flat-spectrum second moment sqrt(S(0) f_b^3 / 3) of a process with one-sided PSD S(0) on [0, f_b].
double flat_spectrum_moment(double s0, double f_b);

/// Up-crossing rate of the averaged fluctuation through `frac` times its mean level.
double upcrossing_rate_flat(const AveragingWindow& window, double frac);

/// The same rate assembled from rice_rate / 2 with flat-spectrum substitutions, for cross-checking.
double upcrossing_rate_composed(const AveragingWindow& window, double frac, double s_level = 1.0);

Probability epsilon_current_11(double lambda, double gamma);
Probability epsilon_current_00(double rho, double gamma);
Probability epsilon_voltage(double frac, double gamma);
Probability epsilon_combined(double frac_v, double frac_i, double gamma);

/// Dangerous-error categories: single-mode misreads of 00/11 as 01/10 and their combined versions.
enum class ErrorType { voltage_00, voltage_11, current_00, current_11, combined_00, combined_11 };

const char* to_string(ErrorType t) noexcept;
Probability analytic_error(ErrorType t, const ThresholdFractions& fr, double gamma);

} // namespace kljn
