#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kljn/analytic.hpp"
#include "kljn/circuit.hpp"
#include "kljn/estimator.hpp"

namespace kljn {

enum class DecisionMode { voltage_only, current_only, combined };

std::string_view to_string(DecisionMode m) noexcept;
DecisionMode parse_mode(std::string_view text); // voltage|current|combined (and *_only spellings)

/// All public parameters of a run.
struct SystemConfig {
    double r = 1.0;         // R0 in Ohm
    double alpha = 100.0;   // R1 / R0
    bool normalized = true; // 4kT_eff = 1 when set
    double t_eff = 1.0;     // K, SI mode only
    double b_kljn = 1.0;    // Hz
    double gamma = 100.0;
    int oversample = 4;
    ThresholdFractions fractions{};
    std::uint64_t n_periods = 1000;
    std::uint64_t master_seed = 1;
    DecisionMode mode = DecisionMode::combined;

    ResistorSet resistors() const { return ResistorSet{r, alpha}; }
    PhysicsConstants constants() const;
    AveragingWindow window() const { return AveragingWindow::from_gamma(gamma, b_kljn); }

    double sample_rate() const noexcept { return oversample * b_kljn; }
    double tau() const noexcept { return gamma / (2.0 * b_kljn); }
    double f_b() const noexcept { return b_kljn / gamma; }
    std::size_t samples_per_period() const;

    /// Throws ConfigError naming the violated constraint.
    void validate() const;
    std::vector<std::string> warnings() const;

    /// Canonical `key=value` text of every resolved field, one per line.
    std::string canonical() const;
    /// FNV-1a 64 of canonical(), as 16 hex digits.
    std::string hash() const;
};

/// Flat `key = value` file, `#` comments. Unknown keys, duplicates and malformed values are errors
/// reported with their line number. Units per key:
///   r [Ohm], alpha [-], units {normalized|si}, t_eff [K], b_kljn [Hz], gamma [-], oversample [-],
///   beta, delta, lambda, rho [-], n_periods [-], master_seed [-], mode {voltage|current|combined}
SystemConfig parse_config(std::istream& in, SystemConfig base = {});
SystemConfig load_config(const std::string& path, SystemConfig base = {});

std::string format_number(double x);

} // namespace kljn
