#include "kljn/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "kljn/config.hpp"
#include "kljn/errors.hpp"

namespace kljn {

AveragingWindow AveragingWindow::from_gamma(double gamma, double bandwidth)
{
    AveragingWindow w{gamma, bandwidth};
    w.validate();
    return w;
}

void AveragingWindow::validate() const
{
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ConfigError("gamma must be > 0");
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw ConfigError("bandwidth must be > 0");
}

std::vector<std::string> AveragingWindow::warnings() const
{
    if (approximations_valid())
        return {};
    return {"gamma = " + format_number(gamma) + " is below 10; error formulas are outside their rare-crossing regime"};
}

double finite_mean_square(std::span<const double> samples)
{
    if (samples.empty())
        throw ConfigError("finite_mean_square: empty input");
    double sum = 0.0;
    for (double x : samples)
        sum += x * x;
    return sum / static_cast<double>(samples.size());
}

double finite_mean_square(const Waveform& w)
{
    return finite_mean_square(w.samples());
}

double squared_noise_psd_theory(double f, double s_level, double bandwidth, double q)
{
    if (f < 0.0 || f > 2.0 * bandwidth)
        return 0.0;
    return 2.0 * q * q * bandwidth * s_level * s_level * (1.0 - f / (2.0 * bandwidth));
}

double squared_noise_power_theory(double f_low, double f_high, double s_level, double bandwidth, double q)
{
    const double lo = std::clamp(f_low, 0.0, 2.0 * bandwidth);
    const double hi = std::clamp(f_high, 0.0, 2.0 * bandwidth);
    if (hi <= lo)
        return 0.0;
    // Linear density: exact integral is width times the midpoint value.
    return (hi - lo) * squared_noise_psd_theory(0.5 * (lo + hi), s_level, bandwidth, q);
}

double averaged_fluctuation_rms(double s_level, const AveragingWindow& window, double q)
{
    window.validate();
    return q * s_level * window.f_b() * std::sqrt(2.0 * window.gamma);
}

} // namespace kljn
