#include "kljn/analytic.hpp"

#include <cmath>
#include <numbers>

#include "kljn/errors.hpp"

namespace kljn {
namespace {

void check_fraction(const char* name, double v)
{
    if (!(v > 0.0 && v < 1.0))
        throw ConfigError(std::string(name) + " must lie strictly inside (0, 1)");
}

void check_gamma(double gamma)
{
    if (!(gamma >= 0.0) || std::isnan(gamma))
        throw ConfigError("gamma must be >= 0");
}

Probability single_mode(const char* name, double frac, double gamma)
{
    check_fraction(name, frac);
    check_gamma(gamma);
    return {std::exp(-frac * frac * gamma / 4.0) / std::numbers::sqrt3, gamma >= 10.0};
}

} // namespace

void ThresholdFractions::validate() const
{
    check_fraction("beta", beta);
    check_fraction("delta", delta);
    check_fraction("lambda", lambda);
    check_fraction("rho", rho);
}

double rice_rate(double threshold, double rms, double spectrum_moment)
{
    if (!(rms > 0.0))
        throw ConfigError("rice_rate: rms must be > 0");
    if (spectrum_moment < 0.0)
        throw ConfigError("rice_rate: spectrum moment must be >= 0");
    return 2.0 / rms * std::exp(-threshold * threshold / (2.0 * rms * rms)) * spectrum_moment;
}

double flat_spectrum_moment(double s0, double f_b)
{
    return std::sqrt(s0 * f_b * f_b * f_b / 3.0);
}

double upcrossing_rate_flat(const AveragingWindow& window, double frac)
{
    window.validate();
    return window.f_b() / std::numbers::sqrt3 * std::exp(-frac * frac * window.gamma / 4.0);
}

double upcrossing_rate_composed(const AveragingWindow& window, double frac, double s_level)
{
    window.validate();
    const double b = window.bandwidth;
    const double f_b = window.f_b();
    const double s0 = 2.0 * b * s_level * s_level; // squared-signal density at f = 0
    const double rms = std::sqrt(f_b * s0);
    const double threshold = frac * s_level * b;
    return 0.5 * rice_rate(threshold, rms, flat_spectrum_moment(s0, f_b));
}

Probability epsilon_current_11(double lambda, double gamma)
{
    return single_mode("lambda", lambda, gamma);
}

Probability epsilon_current_00(double rho, double gamma)
{
    return single_mode("rho", rho, gamma);
}

Probability epsilon_voltage(double frac, double gamma)
{
    return single_mode("voltage threshold fraction", frac, gamma);
}

Probability epsilon_combined(double frac_v, double frac_i, double gamma)
{
    const Probability v = epsilon_voltage(frac_v, gamma);
    const Probability i = single_mode("current threshold fraction", frac_i, gamma);
    return {v.value * i.value, v.valid && i.valid};
}

const char* to_string(ErrorType t) noexcept
{
    switch (t) {
    case ErrorType::voltage_00: return "voltage_00";
    case ErrorType::voltage_11: return "voltage_11";
    case ErrorType::current_00: return "current_00";
    case ErrorType::current_11: return "current_11";
    case ErrorType::combined_00: return "combined_00";
    case ErrorType::combined_11: return "combined_11";
    }
    return "?";
}

Probability analytic_error(ErrorType t, const ThresholdFractions& fr, double gamma)
{
    switch (t) {
    case ErrorType::voltage_00: return epsilon_voltage(fr.beta, gamma);
    case ErrorType::voltage_11: return epsilon_voltage(fr.delta, gamma);
    case ErrorType::current_00: return epsilon_current_00(fr.rho, gamma);
    case ErrorType::current_11: return epsilon_current_11(fr.lambda, gamma);
    case ErrorType::combined_00: return epsilon_combined(fr.beta, fr.rho, gamma);
    case ErrorType::combined_11: return epsilon_combined(fr.delta, fr.lambda, gamma);
    }
    return {};
}

} // namespace kljn
