#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kljn/noise.hpp"

namespace kljn {

/// Wire-observable situation of a bit pair. Index order follows the error table: 00, 11, 01/10.
enum class BitState { b00 = 0, b11 = 1, b0110 = 2 };

inline constexpr int kStateCount = 3;

std::string_view to_string(BitState s) noexcept;
BitState parse_bit_state(std::string_view text); // "00", "11", "0110", "01/10"

struct ResistorSet {
    double r_low = 1.0; // R0 = R
    double alpha = 10.0; // R1 = alpha * R

    double r_high() const noexcept { return alpha * r_low; }
    double resistance(int bit) const noexcept { return bit ? r_high() : r_low; }

    void validate() const;
    /// Non-fatal remarks (alpha < 10).
    std::vector<std::string> warnings() const;
};

struct LoopState {
    int bit_alice = 0;
    int bit_bob = 0;
    double r_alice = 1.0;
    double r_bob = 1.0;

    static LoopState from_bits(int bit_alice, int bit_bob, const ResistorSet& resistors);

    double r_parallel() const noexcept { return r_alice * r_bob / (r_alice + r_bob); }
    double r_loop() const noexcept { return r_alice + r_bob; }
    BitState state() const noexcept;
};

/// Representative bit pair of a situation (01 for the secure state).
std::pair<int, int> representative_bits(BitState s) noexcept;

inline constexpr double kBoltzmann = 1.380649e-23; // J/K, exact SI value

/// Either SI (k * T_eff) or normalized with 4kT_eff = 1 V^2/(Hz*Ohm).
struct PhysicsConstants {
    bool normalized = true;
    double k = kBoltzmann;
    double t_eff = 1.0;

    static PhysicsConstants normalized_units() { return PhysicsConstants{}; }
    static PhysicsConstants si(double t_eff) { return PhysicsConstants{false, kBoltzmann, t_eff}; }

    double four_kt() const noexcept { return normalized ? 1.0 : 4.0 * k * t_eff; }
    void validate() const;
};

/// One-sided Johnson-noise PSD of a resistor, 4 k T_eff r.
double generator_psd(double r, const PhysicsConstants& consts);

struct ChannelWaveforms {
    Waveform voltage;
    Waveform current;
};

/// Single-loop Kirchhoff solution for the wire voltage and current.
ChannelWaveforms channel_waveforms(const Waveform& u_a, const Waveform& u_b, const LoopState& state);

/// Allocation-free kernel behind channel_waveforms.
void channel_waveforms_into(std::span<const double> u_a, std::span<const double> u_b, double r_a, double r_b,
                            std::span<double> u_c, std::span<double> i_c);

/// Exact (infinite-time) mean-square channel levels for the three situations.
struct LevelTable {
    double voltage[kStateCount] = {};
    double current[kStateCount] = {};
    std::vector<std::string> warnings;

    double v(BitState s) const noexcept { return voltage[static_cast<int>(s)]; }
    double i(BitState s) const noexcept { return current[static_cast<int>(s)]; }
    /// One-sided channel PSDs: level / bandwidth.
    double bandwidth = 1.0;
};

LevelTable theoretical_levels(const ResistorSet& resistors, const PhysicsConstants& consts, double bandwidth);

/// 11-state current level computed with a (1+alpha)R loop instead of 2*alpha*R; diagnostic only.
double current_11_one_plus_alpha_loop(const ResistorSet& resistors, const PhysicsConstants& consts, double bandwidth);

} // namespace kljn
