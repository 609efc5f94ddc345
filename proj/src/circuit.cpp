#include "kljn/circuit.hpp"

#include <cmath>

#include "kljn/config.hpp"
#include "kljn/errors.hpp"

namespace kljn {

std::string_view to_string(BitState s) noexcept
{
    switch (s) {
    case BitState::b00: return "00";
    case BitState::b11: return "11";
    case BitState::b0110: return "01/10";
    }
    return "?";
}

BitState parse_bit_state(std::string_view text)
{
    if (text == "00")
        return BitState::b00;
    if (text == "11")
        return BitState::b11;
    if (text == "0110" || text == "01/10" || text == "01" || text == "10")
        return BitState::b0110;
    throw ConfigError("unknown bit state '" + std::string(text) + "' (expected 00, 11 or 0110)");
}

void ResistorSet::validate() const
{
    if (!std::isfinite(r_low) || r_low <= 0.0)
        throw ConfigError("r must be > 0");
    if (!std::isfinite(alpha) || alpha <= 1.0)
        throw ConfigError("alpha must be > 1 (R1 = alpha*R must differ from R0 = R)");
}

std::vector<std::string> ResistorSet::warnings() const
{
    std::vector<std::string> out;
    if (alpha < 10.0)
        out.push_back("alpha = " + format_number(alpha) + " is below 10; level separation is small");
    return out;
}

LoopState LoopState::from_bits(int bit_alice, int bit_bob, const ResistorSet& resistors)
{
    return LoopState{bit_alice, bit_bob, resistors.resistance(bit_alice), resistors.resistance(bit_bob)};
}

BitState LoopState::state() const noexcept
{
    if (bit_alice != bit_bob)
        return BitState::b0110;
    return bit_alice ? BitState::b11 : BitState::b00;
}

std::pair<int, int> representative_bits(BitState s) noexcept
{
    switch (s) {
    case BitState::b00: return {0, 0};
    case BitState::b11: return {1, 1};
    case BitState::b0110: return {0, 1};
    }
    return {0, 1};
}

void PhysicsConstants::validate() const
{
    if (normalized)
        return;
    if (!(k > 0.0) || !std::isfinite(k))
        throw ConfigError("Boltzmann constant must be > 0");
    if (!(t_eff > 0.0) || !std::isfinite(t_eff))
        throw ConfigError("t_eff must be > 0");
}

double generator_psd(double r, const PhysicsConstants& consts)
{
    if (!(r > 0.0) || !std::isfinite(r))
        throw ConfigError("generator_psd: resistance must be > 0");
    consts.validate();
    return consts.four_kt() * r;
}

void channel_waveforms_into(std::span<const double> u_a, std::span<const double> u_b, double r_a, double r_b,
                            std::span<double> u_c, std::span<double> i_c)
{
    const double r_loop = r_a + r_b;
    const double inv = 1.0 / r_loop;
    const std::size_t n = u_a.size();
    for (std::size_t t = 0; t < n; ++t) {
        i_c[t] = (u_a[t] - u_b[t]) * inv;
        u_c[t] = (u_a[t] * r_b + u_b[t] * r_a) * inv;
    }
}

ChannelWaveforms channel_waveforms(const Waveform& u_a, const Waveform& u_b, const LoopState& state)
{
    if (u_a.size() != u_b.size())
        throw ConfigError("channel_waveforms: length mismatch");
    if (u_a.sample_rate() != u_b.sample_rate())
        throw ConfigError("channel_waveforms: sample rate mismatch");
    if (!(state.r_alice > 0.0) || !(state.r_bob > 0.0))
        throw ConfigError("channel_waveforms: resistances must be > 0");

    std::vector<double> u_c(u_a.size()), i_c(u_a.size());
    channel_waveforms_into(u_a.samples(), u_b.samples(), state.r_alice, state.r_bob, u_c, i_c);
    return {Waveform(std::move(u_c), u_a.sample_rate()), Waveform(std::move(i_c), u_a.sample_rate())};
}

LevelTable theoretical_levels(const ResistorSet& resistors, const PhysicsConstants& consts, double bandwidth)
{
    resistors.validate();
    consts.validate();
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw ConfigError("bandwidth must be > 0");

    LevelTable table;
    table.bandwidth = bandwidth;
    table.warnings = resistors.warnings();
    for (BitState s : {BitState::b00, BitState::b11, BitState::b0110}) {
        const auto [a, b] = representative_bits(s);
        const LoopState loop = LoopState::from_bits(a, b, resistors);
        table.voltage[static_cast<int>(s)] = consts.four_kt() * loop.r_parallel() * bandwidth;
        table.current[static_cast<int>(s)] = consts.four_kt() / loop.r_loop() * bandwidth;
    }
    return table;
}

double current_11_one_plus_alpha_loop(const ResistorSet& resistors, const PhysicsConstants& consts, double bandwidth)
{
    resistors.validate();
    return consts.four_kt() * bandwidth / ((1.0 + resistors.alpha) * resistors.r_low);
}

} // namespace kljn
