#pragma once

#include <string_view>

#include "kljn/analytic.hpp"
#include "kljn/circuit.hpp"

namespace kljn {

/// Three-way reading of a mean-square measurement.
enum class Interpretation { b00 = 0, b11 = 1, secure_0110 = 2 };

enum class CombinedOutcome {
    keep_secure = 0,
    discard_insecure_00 = 1,
    discard_insecure_11 = 2,
    discard_mixed = 3,
    alarm_conflict = 4,
};

inline constexpr int kInterpretationCount = 3;
inline constexpr int kOutcomeCount = 5;

std::string_view to_string(Interpretation v) noexcept;
std::string_view to_string(CombinedOutcome v) noexcept;

/// Absolute decision thresholds. Values on a cut belong to the secure band.
struct DecisionBands {
    double v_low_cut = 0.0;  // below: 00
    double v_high_cut = 0.0; // above: 11
    double i_low_cut = 0.0;  // below: 11
    double i_high_cut = 0.0; // above: 00
};

/// Cuts placed at a fraction of the exact level they guard. Throws EmptySecureBandError when a
/// band is empty.
DecisionBands make_bands(const LevelTable& levels, const ThresholdFractions& fracs);

Interpretation interpret_current(double msi, const DecisionBands& bands) noexcept;
Interpretation interpret_voltage(double msv, const DecisionBands& bands) noexcept;

/// Combined voltage/current verdict: keep only when both read secure, discard insecure readings,
/// and raise an alarm when the two modes point to opposite corners.
CombinedOutcome combine(Interpretation voltage, Interpretation current) noexcept;

} // namespace kljn
