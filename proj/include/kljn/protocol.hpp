#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kljn/config.hpp"
#include "kljn/decision.hpp"

namespace kljn {

struct PeriodOptions {
    /// Overrides the drawn bits. For the secure state Alice's drawn bit is kept and Bob's is its inverse.
    std::optional<BitState> force_state;
    /// Test hook: skip synthesis and use this measurement verbatim.
    std::optional<Measurement> measurement_override;
};

struct PeriodRecord {
    std::uint64_t index = 0;
    int bit_alice = 0;
    int bit_bob = 0;
    Measurement measurement{};
    Interpretation v_interp = Interpretation::secure_0110;
    Interpretation i_interp = Interpretation::secure_0110;
    CombinedOutcome outcome = CombinedOutcome::keep_secure;

    BitState actual() const noexcept;
    bool operator==(const PeriodRecord&) const = default;
};

/// Whether the period yields a key bit under the given decision mode.
bool is_kept(const PeriodRecord& rec, DecisionMode mode) noexcept;

/// Exact measurement a period in `state` would produce with infinite averaging time.
Measurement exact_measurement(const LevelTable& levels, BitState state) noexcept;

/// Precomputed per-config state shared by all periods of a session. Thread-safe for concurrent
/// simulate() calls.
class PeriodSimulator {
public:
    explicit PeriodSimulator(const SystemConfig& config);

    const SystemConfig& config() const noexcept { return config_; }
    const LevelTable& levels() const noexcept { return levels_; }
    const DecisionBands& bands() const noexcept { return bands_; }

    /// Deterministic in (master_seed, index, options).
    PeriodRecord simulate(std::uint64_t index, std::uint64_t master_seed, const PeriodOptions& options = {}) const;

private:
    SystemConfig config_;
    LevelTable levels_;
    DecisionBands bands_;
    std::size_t n_samples_;
};

PeriodRecord simulate_period(const SystemConfig& config, std::uint64_t period_index, std::uint64_t master_seed,
                             const PeriodOptions& options = {});

/// OpenMP kernel: periods 0..n-1 in parallel, records returned in index order.
std::vector<PeriodRecord> simulate_periods(const SystemConfig& config, std::uint64_t n_periods,
                                           std::uint64_t master_seed, const PeriodOptions& options = {});

/// Serial reference for simulate_periods; bit-identical output.
std::vector<PeriodRecord> simulate_periods_serial(const SystemConfig& config, std::uint64_t n_periods,
                                                  std::uint64_t master_seed, const PeriodOptions& options = {});

/// Binomial proportion with a Wilson score 95% interval. Undefined when trials == 0.
struct RateEstimate {
    std::uint64_t count = 0;
    std::uint64_t trials = 0;
    double ci_low = 0.0;
    double ci_high = 1.0;

    bool defined() const noexcept { return trials > 0; }
    double rate() const noexcept { return trials ? static_cast<double>(count) / static_cast<double>(trials) : 0.0; }
};

RateEstimate wilson_interval(std::uint64_t count, std::uint64_t trials, double z = 1.959963984540054);

struct SessionReport {
    std::uint64_t n_periods = 0;
    DecisionMode mode = DecisionMode::combined;
    // [actual state][interpretation], order 00, 11, 01/10
    std::uint64_t confusion_v[kStateCount][kInterpretationCount] = {};
    std::uint64_t confusion_i[kStateCount][kInterpretationCount] = {};
    // [actual state][combined outcome]
    std::uint64_t combined_counts[kStateCount][kOutcomeCount] = {};

    RateEstimate eps_v_00, eps_v_11;
    RateEstimate eps_i_00, eps_i_11;
    RateEstimate eps_combined_00, eps_combined_11;

    std::optional<double> fidelity; // unset without actual 01/10 periods
    double discard_rate = 0.0;
    std::uint64_t kept = 0;

    std::uint64_t state_count(BitState s) const noexcept;
    std::uint64_t combined_total() const noexcept;
};

SessionReport summarize(std::span<const PeriodRecord> records, DecisionMode mode);

SessionReport run_session(const SystemConfig& config, std::uint64_t n_periods, std::uint64_t master_seed,
                          const PeriodOptions& options = {});

/// Shared key bits. Alice's bit is the key bit; Bob uses the inverse of his own bit.
struct KeyPair {
    std::vector<std::uint8_t> alice;
    std::vector<std::uint8_t> bob;

    std::size_t mismatches() const noexcept;
};

KeyPair extract_key(std::span<const PeriodRecord> records, DecisionMode mode = DecisionMode::combined);

/// MSB-first packing; trailing bits of the last byte are zero.
std::string bits_to_hex(std::span<const std::uint8_t> bits);

/// Long-run channel statistics of one bit situation.
struct LevelCalibration {
    BitState state = BitState::b00;
    std::size_t n_samples = 0;
    double msv = 0.0;
    double msi = 0.0;
    double cross = 0.0;      // mean of u_c * i_c
    double cross_se = 0.0;   // standard error of `cross` from block means
};

/// OpenMP kernel over independent synthesis blocks; block sums are combined in block order.
LevelCalibration calibrate_levels(const SystemConfig& config, BitState state, std::size_t n_samples,
                                  std::uint64_t seed, std::size_t block_size = 1u << 16);

/// Serial reference for calibrate_levels.
LevelCalibration calibrate_levels_serial(const SystemConfig& config, BitState state, std::size_t n_samples,
                                         std::uint64_t seed, std::size_t block_size = 1u << 16);

} // namespace kljn
