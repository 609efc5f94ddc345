#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kljn/protocol.hpp"

namespace kljn {

struct LevelReport {
    LevelTable theory;
    LevelCalibration empirical[kStateCount];
    double current_11_one_plus_alpha = 0.0;
};

LevelReport levels_report(const SystemConfig& config, std::size_t calibration_samples = std::size_t{1} << 20);
void print_levels(std::ostream& out, const SystemConfig& config, const LevelReport& report);

struct SweepRow {
    double gamma = 0.0;
    ErrorType type = ErrorType::current_11;
    double eps_analytic = 0.0;
    RateEstimate mc;
};

/// Error types measured by a sweep in the given mode; `force` restricts them to one actual state.
std::vector<ErrorType> sweep_error_types(DecisionMode mode, std::optional<BitState> force);

/// Rows ordered by gamma then error type. Each Monte Carlo point runs config.n_periods periods with
/// the actual state forced to the one the error type is conditioned on.
std::vector<SweepRow> run_sweep(const SystemConfig& config, const std::vector<double>& gammas, DecisionMode mode,
                                std::optional<BitState> force = std::nullopt);

void write_sweep_csv(std::ostream& out, const SystemConfig& config, const std::vector<SweepRow>& rows);

struct SpectrumRow {
    double f_low = 0.0;
    double f_high = 0.0;
    double empirical = 0.0;
    double theory = 0.0; // bin average of the triangular density

    double center() const noexcept { return 0.5 * (f_low + f_high); }
};

struct SpectrumReport {
    std::vector<SpectrumRow> rows;
    double s_level = 0.0;          // one-sided PSD of the 11-state channel current
    double ac_power = 0.0;         // variance of i_c^2
    double out_of_support = 0.0;   // fraction of empirical power above 2B
};

/// Squared channel current of the 11 state over one long synthesized run, mean removed.
SpectrumReport run_spectra(const SystemConfig& config, std::size_t n_samples = std::size_t{1} << 22,
                           std::size_t n_bins = 64);

void write_spectra_csv(std::ostream& out, const SystemConfig& config, const SpectrumReport& report);

/// Structured report of a full session with extracted keys. Field order is fixed.
std::string session_json(const SystemConfig& config, const SessionReport& report, const KeyPair& keys);

std::vector<double> parse_gamma_list(const std::string& text);

} // namespace kljn
