#include "kljn/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "kljn/errors.hpp"

namespace kljn {

BitState PeriodRecord::actual() const noexcept
{
    if (bit_alice != bit_bob)
        return BitState::b0110;
    return bit_alice ? BitState::b11 : BitState::b00;
}

bool is_kept(const PeriodRecord& rec, DecisionMode mode) noexcept
{
    switch (mode) {
    case DecisionMode::voltage_only: return rec.v_interp == Interpretation::secure_0110;
    case DecisionMode::current_only: return rec.i_interp == Interpretation::secure_0110;
    case DecisionMode::combined: return rec.outcome == CombinedOutcome::keep_secure;
    }
    return false;
}

Measurement exact_measurement(const LevelTable& levels, BitState state) noexcept
{
    return {levels.v(state), levels.i(state)};
}

PeriodSimulator::PeriodSimulator(const SystemConfig& config)
    : config_(config)
{
    config_.validate();
    levels_ = theoretical_levels(config_.resistors(), config_.constants(), config_.b_kljn);
    bands_ = make_bands(levels_, config_.fractions);
    n_samples_ = config_.samples_per_period();
}

namespace {

struct Scratch {
    std::vector<double> u_a, u_b, u_c, i_c;

    void resize(std::size_t n)
    {
        u_a.resize(n);
        u_b.resize(n);
        u_c.resize(n);
        i_c.resize(n);
    }
};

NoiseSpec generator_spec(const SystemConfig& cfg, double r, std::size_t n)
{
    return NoiseSpec{generator_psd(r, cfg.constants()), cfg.b_kljn, cfg.sample_rate(), n};
}

} // namespace

PeriodRecord PeriodSimulator::simulate(std::uint64_t index, std::uint64_t master_seed,
                                       const PeriodOptions& options) const
{
    RandomEngine rng = make_stream(master_seed, StreamTag::period, index);

    PeriodRecord rec;
    rec.index = index;
    rec.bit_alice = static_cast<int>(rng() >> 63);
    rec.bit_bob = static_cast<int>(rng() >> 63);
    if (options.force_state) {
        switch (*options.force_state) {
        case BitState::b00: rec.bit_alice = rec.bit_bob = 0; break;
        case BitState::b11: rec.bit_alice = rec.bit_bob = 1; break;
        case BitState::b0110: rec.bit_bob = 1 - rec.bit_alice; break;
        }
    }

    if (options.measurement_override) {
        rec.measurement = *options.measurement_override;
    } else {
        const ResistorSet resistors = config_.resistors();
        const LoopState loop = LoopState::from_bits(rec.bit_alice, rec.bit_bob, resistors);
        thread_local Scratch scratch;
        scratch.resize(n_samples_);
        synth_band_limited_into(generator_spec(config_, loop.r_alice, n_samples_), rng, scratch.u_a);
        synth_band_limited_into(generator_spec(config_, loop.r_bob, n_samples_), rng, scratch.u_b);
        channel_waveforms_into(scratch.u_a, scratch.u_b, loop.r_alice, loop.r_bob, scratch.u_c, scratch.i_c);
        rec.measurement = {finite_mean_square(scratch.u_c), finite_mean_square(scratch.i_c)};
    }

    rec.v_interp = interpret_voltage(rec.measurement.msv, bands_);
    rec.i_interp = interpret_current(rec.measurement.msi, bands_);
    rec.outcome = combine(rec.v_interp, rec.i_interp);
    return rec;
}

PeriodRecord simulate_period(const SystemConfig& config, std::uint64_t period_index, std::uint64_t master_seed,
                             const PeriodOptions& options)
{
    return PeriodSimulator(config).simulate(period_index, master_seed, options);
}

std::vector<PeriodRecord> simulate_periods(const SystemConfig& config, std::uint64_t n_periods,
                                           std::uint64_t master_seed, const PeriodOptions& options)
{
    const PeriodSimulator sim(config);
    std::vector<PeriodRecord> out(n_periods);
    const auto n = static_cast<std::int64_t>(n_periods);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = sim.simulate(static_cast<std::uint64_t>(i), master_seed, options);
    return out;
}

std::vector<PeriodRecord> simulate_periods_serial(const SystemConfig& config, std::uint64_t n_periods,
                                                  std::uint64_t master_seed, const PeriodOptions& options)
{
    const PeriodSimulator sim(config);
    std::vector<PeriodRecord> out;
    out.reserve(n_periods);
    for (std::uint64_t i = 0; i < n_periods; ++i)
        out.push_back(sim.simulate(i, master_seed, options));
    return out;
}

RateEstimate wilson_interval(std::uint64_t count, std::uint64_t trials, double z)
{
    RateEstimate est{count, trials, 0.0, 1.0};
    if (trials == 0)
        return est;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(count) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    est.ci_low = std::max(0.0, center - half);
    est.ci_high = std::min(1.0, center + half);
    if (count == 0)
        est.ci_low = 0.0;
    if (count == trials)
        est.ci_high = 1.0;
    return est;
}

std::uint64_t SessionReport::state_count(BitState s) const noexcept
{
    std::uint64_t sum = 0;
    for (auto c : confusion_v[static_cast<int>(s)])
        sum += c;
    return sum;
}

std::uint64_t SessionReport::combined_total() const noexcept
{
    std::uint64_t sum = 0;
    for (const auto& row : combined_counts)
        for (auto c : row)
            sum += c;
    return sum;
}

SessionReport summarize(std::span<const PeriodRecord> records, DecisionMode mode)
{
    SessionReport rep;
    rep.mode = mode;
    rep.n_periods = records.size();
    std::uint64_t kept_secure = 0;
    for (const auto& rec : records) {
        const int s = static_cast<int>(rec.actual());
        ++rep.confusion_v[s][static_cast<int>(rec.v_interp)];
        ++rep.confusion_i[s][static_cast<int>(rec.i_interp)];
        ++rep.combined_counts[s][static_cast<int>(rec.outcome)];
        if (is_kept(rec, mode)) {
            ++rep.kept;
            if (rec.actual() == BitState::b0110)
                ++kept_secure;
        }
    }

    constexpr int s00 = static_cast<int>(BitState::b00);
    constexpr int s11 = static_cast<int>(BitState::b11);
    constexpr int secure = static_cast<int>(Interpretation::secure_0110);
    constexpr int keep = static_cast<int>(CombinedOutcome::keep_secure);
    const std::uint64_t n00 = rep.state_count(BitState::b00);
    const std::uint64_t n11 = rep.state_count(BitState::b11);
    const std::uint64_t n0110 = rep.state_count(BitState::b0110);

    rep.eps_v_00 = wilson_interval(rep.confusion_v[s00][secure], n00);
    rep.eps_v_11 = wilson_interval(rep.confusion_v[s11][secure], n11);
    rep.eps_i_00 = wilson_interval(rep.confusion_i[s00][secure], n00);
    rep.eps_i_11 = wilson_interval(rep.confusion_i[s11][secure], n11);
    rep.eps_combined_00 = wilson_interval(rep.combined_counts[s00][keep], n00);
    rep.eps_combined_11 = wilson_interval(rep.combined_counts[s11][keep], n11);

    if (n0110 > 0)
        rep.fidelity = static_cast<double>(kept_secure) / static_cast<double>(n0110);
    if (rep.n_periods > 0)
        rep.discard_rate = static_cast<double>(rep.n_periods - rep.kept) / static_cast<double>(rep.n_periods);
    return rep;
}

SessionReport run_session(const SystemConfig& config, std::uint64_t n_periods, std::uint64_t master_seed,
                          const PeriodOptions& options)
{
    if (n_periods < 1)
        throw ConfigError("n_periods must be >= 1");
    const auto records = simulate_periods(config, n_periods, master_seed, options);
    return summarize(records, config.mode);
}

std::size_t KeyPair::mismatches() const noexcept
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < alice.size() && i < bob.size(); ++i)
        count += alice[i] != bob[i];
    return count;
}

KeyPair extract_key(std::span<const PeriodRecord> records, DecisionMode mode)
{
    KeyPair keys;
    for (const auto& rec : records) {
        if (!is_kept(rec, mode))
            continue;
        keys.alice.push_back(static_cast<std::uint8_t>(rec.bit_alice));
        keys.bob.push_back(static_cast<std::uint8_t>(1 - rec.bit_bob));
    }
    return keys;
}

std::string bits_to_hex(std::span<const std::uint8_t> bits)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve((bits.size() + 3) / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        unsigned nibble = 0;
        for (std::size_t j = 0; j < 4; ++j)
            nibble = (nibble << 1) | (i + j < bits.size() ? (bits[i + j] & 1u) : 0u);
        out.push_back(digits[nibble]);
    }
    return out;
}

namespace {

struct BlockSums {
    double uu = 0.0;
    double ii = 0.0;
    double ui = 0.0;
};

BlockSums calibration_block(const SystemConfig& cfg, const LoopState& loop, std::size_t block_size,
                            std::uint64_t seed, std::uint64_t block)
{
    RandomEngine rng = make_stream(seed, StreamTag::calibration, block);
    thread_local Scratch scratch;
    scratch.resize(block_size);
    synth_band_limited_into(generator_spec(cfg, loop.r_alice, block_size), rng, scratch.u_a);
    synth_band_limited_into(generator_spec(cfg, loop.r_bob, block_size), rng, scratch.u_b);
    channel_waveforms_into(scratch.u_a, scratch.u_b, loop.r_alice, loop.r_bob, scratch.u_c, scratch.i_c);
    BlockSums s;
    for (std::size_t t = 0; t < block_size; ++t) {
        s.uu += scratch.u_c[t] * scratch.u_c[t];
        s.ii += scratch.i_c[t] * scratch.i_c[t];
        s.ui += scratch.u_c[t] * scratch.i_c[t];
    }
    return s;
}

LevelCalibration reduce_blocks(BitState state, const std::vector<BlockSums>& blocks, std::size_t block_size)
{
    LevelCalibration cal;
    cal.state = state;
    cal.n_samples = blocks.size() * block_size;
    const double n = static_cast<double>(cal.n_samples);
    for (const auto& b : blocks) {
        cal.msv += b.uu;
        cal.msi += b.ii;
        cal.cross += b.ui;
    }
    cal.msv /= n;
    cal.msi /= n;
    cal.cross /= n;
    if (blocks.size() > 1) {
        double ss = 0.0;
        for (const auto& b : blocks) {
            const double d = b.ui / static_cast<double>(block_size) - cal.cross;
            ss += d * d;
        }
        const double k = static_cast<double>(blocks.size());
        cal.cross_se = std::sqrt(ss / (k - 1.0) / k);
    }
    return cal;
}

std::size_t block_count(std::size_t n_samples, std::size_t block_size)
{
    if (block_size < 2)
        throw ConfigError("calibration block size must be >= 2");
    return std::max<std::size_t>(1, (n_samples + block_size - 1) / block_size);
}

} // namespace

LevelCalibration calibrate_levels(const SystemConfig& config, BitState state, std::size_t n_samples,
                                  std::uint64_t seed, std::size_t block_size)
{
    config.validate();
    const auto [a, b] = representative_bits(state);
    const LoopState loop = LoopState::from_bits(a, b, config.resistors());
    std::vector<BlockSums> blocks(block_count(n_samples, block_size));
    const auto n = static_cast<std::int64_t>(blocks.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        blocks[static_cast<std::size_t>(i)] =
            calibration_block(config, loop, block_size, seed, static_cast<std::uint64_t>(i));
    return reduce_blocks(state, blocks, block_size);
}

LevelCalibration calibrate_levels_serial(const SystemConfig& config, BitState state, std::size_t n_samples,
                                         std::uint64_t seed, std::size_t block_size)
{
    config.validate();
    const auto [a, b] = representative_bits(state);
    const LoopState loop = LoopState::from_bits(a, b, config.resistors());
    std::vector<BlockSums> blocks;
    const std::size_t count = block_count(n_samples, block_size);
    for (std::size_t i = 0; i < count; ++i)
        blocks.push_back(calibration_block(config, loop, block_size, seed, i));
    return reduce_blocks(state, blocks, block_size);
}

} // namespace kljn
