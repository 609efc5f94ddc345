#include "kljn/commands.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "kljn/errors.hpp"

namespace kljn {

LevelReport levels_report(const SystemConfig& config, std::size_t calibration_samples)
{
    config.validate();
    LevelReport rep;
    rep.theory = theoretical_levels(config.resistors(), config.constants(), config.b_kljn);
    for (BitState s : {BitState::b00, BitState::b11, BitState::b0110}) {
        const auto seed = derive_seed(config.master_seed, StreamTag::calibration, static_cast<std::uint64_t>(s));
        rep.empirical[static_cast<int>(s)] = calibrate_levels(config, s, calibration_samples, seed);
    }
    rep.current_11_one_plus_alpha = current_11_one_plus_alpha_loop(config.resistors(), config.constants(), config.b_kljn);
    return rep;
}

void print_levels(std::ostream& out, const SystemConfig& config, const LevelReport& rep)
{
    out << "config " << config.hash() << '\n';
    if (config.normalized)
        out << "units normalized (4kT_eff = 1 V^2/(Hz*Ohm))\n";
    else
        out << "units si  k = " << format_number(kBoltzmann) << " J/K  t_eff = " << format_number(config.t_eff)
            << " K\n";
    out << "r = " << format_number(config.r) << " Ohm  alpha = " << format_number(config.alpha)
        << "  b_kljn = " << format_number(config.b_kljn) << " Hz\n\n";

    char line[160];
    std::snprintf(line, sizeof line, "%-6s %-8s %-14s %-14s %-10s\n", "state", "quantity", "theory", "empirical",
                  "rel_error");
    out << line;
    for (BitState s : {BitState::b00, BitState::b0110, BitState::b11}) {
        const auto& cal = rep.empirical[static_cast<int>(s)];
        const double rows[2][2] = {{rep.theory.v(s), cal.msv}, {rep.theory.i(s), cal.msi}};
        const char* names[2] = {"<u^2>", "<i^2>"};
        for (int q = 0; q < 2; ++q) {
            std::snprintf(line, sizeof line, "%-6s %-8s %-14.6g %-14.6g %-+10.3e\n",
                          std::string(to_string(s)).c_str(), names[q], rows[q][0], rows[q][1],
                          rows[q][1] / rows[q][0] - 1.0);
            out << line;
        }
    }
    out << "\n11-state <i^2> with a (1+alpha)R loop: " << format_number(rep.current_11_one_plus_alpha)
        << " (R_A + R_B loop: " << format_number(rep.theory.i(BitState::b11)) << ")\n";
    out << "calibration samples per state: " << rep.empirical[0].n_samples << '\n';
    for (const auto& w : config.warnings())
        out << "warning: " << w << '\n';
}

std::vector<ErrorType> sweep_error_types(DecisionMode mode, std::optional<BitState> force)
{
    if (force == BitState::b0110)
        throw ConfigError("sweep: --force-state 0110 has no dangerous error to measure (use 00 or 11)");
    std::vector<ErrorType> all;
    switch (mode) {
    case DecisionMode::voltage_only: all = {ErrorType::voltage_00, ErrorType::voltage_11}; break;
    case DecisionMode::current_only: all = {ErrorType::current_00, ErrorType::current_11}; break;
    case DecisionMode::combined: all = {ErrorType::combined_00, ErrorType::combined_11}; break;
    }
    if (!force)
        return all;
    return {*force == BitState::b00 ? all[0] : all[1]};
}

namespace {

BitState conditioned_state(ErrorType t) noexcept
{
    switch (t) {
    case ErrorType::voltage_00:
    case ErrorType::current_00:
    case ErrorType::combined_00: return BitState::b00;
    default: return BitState::b11;
    }
}

bool is_dangerous(ErrorType t, const PeriodRecord& rec) noexcept
{
    switch (t) {
    case ErrorType::voltage_00:
    case ErrorType::voltage_11: return rec.v_interp == Interpretation::secure_0110;
    case ErrorType::current_00:
    case ErrorType::current_11: return rec.i_interp == Interpretation::secure_0110;
    default: return rec.outcome == CombinedOutcome::keep_secure;
    }
}

} // namespace

std::vector<SweepRow> run_sweep(const SystemConfig& config, const std::vector<double>& gammas, DecisionMode mode,
                                std::optional<BitState> force)
{
    if (gammas.empty())
        throw ConfigError("sweep: gamma list is empty");
    for (std::size_t i = 1; i < gammas.size(); ++i)
        if (!(gammas[i] > gammas[i - 1]))
            throw ConfigError("sweep: gamma list must be strictly ascending");
    const auto types = sweep_error_types(mode, force);

    std::vector<SweepRow> rows;
    for (std::size_t g = 0; g < gammas.size(); ++g) {
        SystemConfig cfg = config;
        cfg.gamma = gammas[g];
        cfg.validate();
        for (BitState state : {BitState::b00, BitState::b11}) {
            bool needed = false;
            for (auto t : types)
                needed = needed || conditioned_state(t) == state;
            if (!needed)
                continue;
            const auto seed =
                derive_seed(config.master_seed, StreamTag::sweep, g * 4 + static_cast<std::uint64_t>(state));
            PeriodOptions opts;
            opts.force_state = state;
            const auto records = simulate_periods(cfg, cfg.n_periods, seed, opts);
            for (auto t : types) {
                if (conditioned_state(t) != state)
                    continue;
                std::uint64_t errors = 0;
                for (const auto& rec : records)
                    errors += is_dangerous(t, rec);
                rows.push_back({gammas[g], t, analytic_error(t, cfg.fractions, cfg.gamma).value,
                                wilson_interval(errors, records.size())});
            }
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const SystemConfig& config, const std::vector<SweepRow>& rows)
{
    const std::string hash = config.hash();
    out << "gamma,eps_analytic,eps_mc,ci_low,ci_high,n_errors,n_trials,error_type,config_hash\n";
    for (const auto& row : rows) {
        out << format_number(row.gamma) << ',' << format_number(row.eps_analytic) << ','
            << format_number(row.mc.rate()) << ',' << format_number(row.mc.ci_low) << ','
            << format_number(row.mc.ci_high) << ',' << row.mc.count << ',' << row.mc.trials << ','
            << to_string(row.type) << ',' << hash << '\n';
    }
}

SpectrumReport run_spectra(const SystemConfig& config, std::size_t n_samples, std::size_t n_bins)
{
    config.validate();
    const LoopState loop = LoopState::from_bits(1, 1, config.resistors());
    RandomEngine rng = make_stream(config.master_seed, StreamTag::spectrum, 0);
    const auto consts = config.constants();
    const Waveform u_a = synth_band_limited(
        NoiseSpec{generator_psd(loop.r_alice, consts), config.b_kljn, config.sample_rate(), n_samples}, rng);
    const Waveform u_b = synth_band_limited(
        NoiseSpec{generator_psd(loop.r_bob, consts), config.b_kljn, config.sample_rate(), n_samples}, rng);
    const auto channel = channel_waveforms(u_a, u_b, loop);

    std::vector<double> squared(n_samples);
    const auto current = channel.current.samples();
    double mean = 0.0;
    for (std::size_t t = 0; t < n_samples; ++t) {
        squared[t] = current[t] * current[t];
        mean += squared[t];
    }
    mean /= static_cast<double>(n_samples);
    double variance = 0.0;
    for (double& x : squared) {
        x -= mean;
        variance += x * x;
    }
    variance /= static_cast<double>(n_samples);

    const auto spectrum = periodogram(Waveform(std::move(squared), config.sample_rate()), n_bins);

    SpectrumReport rep;
    rep.s_level = consts.four_kt() / loop.r_loop();
    rep.ac_power = variance;
    double outside = 0.0;
    for (const auto& bin : spectrum) {
        const double width = bin.f_high - bin.f_low;
        rep.rows.push_back({bin.f_low, bin.f_high, bin.density,
                            squared_noise_power_theory(bin.f_low, bin.f_high, rep.s_level, config.b_kljn) / width});
        if (bin.f_low >= 2.0 * config.b_kljn)
            outside += bin.power();
    }
    const double total = total_power(spectrum);
    rep.out_of_support = total > 0.0 ? outside / total : 0.0;
    return rep;
}

void write_spectra_csv(std::ostream& out, const SystemConfig& config, const SpectrumReport& report)
{
    const std::string hash = config.hash();
    out << "f,empirical_psd,theory_psd,config_hash\n";
    for (const auto& row : report.rows)
        out << format_number(row.center()) << ',' << format_number(row.empirical) << ','
            << format_number(row.theory) << ',' << hash << '\n';
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json rate_json(const RateEstimate& r)
{
    ordered_json j;
    j["rate"] = r.defined() ? ordered_json(r.rate()) : ordered_json(nullptr);
    j["count"] = r.count;
    j["trials"] = r.trials;
    j["ci_low"] = r.defined() ? ordered_json(r.ci_low) : ordered_json(nullptr);
    j["ci_high"] = r.defined() ? ordered_json(r.ci_high) : ordered_json(nullptr);
    return j;
}

constexpr BitState kStates[] = {BitState::b00, BitState::b11, BitState::b0110};
constexpr Interpretation kInterps[] = {Interpretation::b00, Interpretation::b11, Interpretation::secure_0110};

ordered_json confusion_json(const std::uint64_t (&m)[kStateCount][kInterpretationCount])
{
    ordered_json j;
    for (BitState s : kStates) {
        ordered_json row;
        for (Interpretation v : kInterps)
            row[std::string(to_string(v))] = m[static_cast<int>(s)][static_cast<int>(v)];
        j[std::string(to_string(s))] = row;
    }
    return j;
}

} // namespace

std::string session_json(const SystemConfig& config, const SessionReport& report, const KeyPair& keys)
{
    ordered_json cfg;
    cfg["r"] = config.r;
    cfg["alpha"] = config.alpha;
    cfg["units"] = config.normalized ? "normalized" : "si";
    if (!config.normalized) {
        cfg["k"] = kBoltzmann;
        cfg["t_eff"] = config.t_eff;
    }
    cfg["b_kljn"] = config.b_kljn;
    cfg["gamma"] = config.gamma;
    cfg["oversample"] = config.oversample;
    cfg["beta"] = config.fractions.beta;
    cfg["delta"] = config.fractions.delta;
    cfg["lambda"] = config.fractions.lambda;
    cfg["rho"] = config.fractions.rho;
    cfg["n_periods"] = config.n_periods;
    cfg["master_seed"] = config.master_seed;
    cfg["mode"] = std::string(to_string(config.mode));
    cfg["tau"] = config.tau();
    cfg["f_b"] = config.f_b();
    cfg["sample_rate"] = config.sample_rate();
    cfg["samples_per_period"] = config.samples_per_period();
    cfg["hash"] = config.hash();

    ordered_json j;
    j["config"] = cfg;
    j["n_periods"] = report.n_periods;
    j["mode"] = std::string(to_string(report.mode));
    j["confusion_v"] = confusion_json(report.confusion_v);
    j["confusion_i"] = confusion_json(report.confusion_i);

    ordered_json combined;
    for (BitState s : kStates) {
        ordered_json row;
        for (int o = 0; o < kOutcomeCount; ++o)
            row[std::string(to_string(static_cast<CombinedOutcome>(o)))] = report.combined_counts[static_cast<int>(s)][o];
        combined[std::string(to_string(s))] = row;
    }
    j["combined_counts"] = combined;

    ordered_json eps;
    eps["v_00"] = rate_json(report.eps_v_00);
    eps["v_11"] = rate_json(report.eps_v_11);
    eps["i_00"] = rate_json(report.eps_i_00);
    eps["i_11"] = rate_json(report.eps_i_11);
    eps["combined_00"] = rate_json(report.eps_combined_00);
    eps["combined_11"] = rate_json(report.eps_combined_11);
    j["eps_hat"] = eps;

    j["fidelity"] = report.fidelity ? ordered_json(*report.fidelity) : ordered_json(nullptr);
    j["discard_rate"] = report.discard_rate;
    j["kept"] = report.kept;

    ordered_json key;
    key["bits"] = keys.alice.size();
    key["alice_hex"] = bits_to_hex(keys.alice);
    key["bob_hex"] = bits_to_hex(keys.bob);
    key["mismatches"] = keys.mismatches();
    j["key"] = key;
    return j.dump(2) + "\n";
}

std::vector<double> parse_gamma_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(' ');
        if (first == std::string::npos)
            throw ConfigError("--gammas: empty entry");
        try {
            std::size_t used = 0;
            const double v = std::stod(item.substr(first), &used);
            if (item.find_first_not_of(' ', first + used) != std::string::npos || !std::isfinite(v))
                throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("--gammas: invalid number '" + item + "'");
        }
    }
    if (out.empty())
        throw ConfigError("--gammas: empty list");
    return out;
}

} // namespace kljn
