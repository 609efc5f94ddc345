// Command-line front end: levels, sweep, session, spectra.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kljn/commands.hpp"
#include "kljn/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> periods;
    std::string out_path;
    std::string gammas;
    std::string mode;
    std::string force_state;
    std::size_t samples = std::size_t{1} << 22;
    std::size_t bins = 64;
    std::size_t calibration_samples = std::size_t{1} << 20;
};

kljn::SystemConfig resolve_config(const Options& opt)
{
    kljn::SystemConfig cfg;
    if (!opt.config_path.empty())
        cfg = kljn::load_config(opt.config_path);
    if (opt.seed)
        cfg.master_seed = *opt.seed;
    if (opt.periods) {
        if (*opt.periods == 0)
            throw kljn::ConfigError("--periods must be >= 1");
        cfg.n_periods = *opt.periods;
    }
    if (!opt.mode.empty())
        cfg.mode = kljn::parse_mode(opt.mode);
    cfg.validate();
    return cfg;
}

std::optional<kljn::BitState> forced_state(const Options& opt)
{
    if (opt.force_state.empty())
        return std::nullopt;
    return kljn::parse_bit_state(opt.force_state);
}

void write_out(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw kljn::RuntimeFailure("cannot write '" + path + "'");
    out << text;
}

void print_warnings(const kljn::SystemConfig& cfg)
{
    for (const auto& w : cfg.warnings())
        std::cerr << "warning: " << w << '\n';
}

int cmd_levels(const Options& opt)
{
    const auto cfg = resolve_config(opt);
    const auto rep = kljn::levels_report(cfg, opt.calibration_samples);
    kljn::print_levels(std::cout, cfg, rep);
    if (!opt.out_path.empty()) {
        std::ostringstream csv;
        csv << "state,quantity,theory,empirical,rel_error,config_hash\n";
        for (auto s : {kljn::BitState::b00, kljn::BitState::b0110, kljn::BitState::b11}) {
            const auto& cal = rep.empirical[static_cast<int>(s)];
            csv << kljn::to_string(s) << ",u2," << kljn::format_number(rep.theory.v(s)) << ','
                << kljn::format_number(cal.msv) << ',' << kljn::format_number(cal.msv / rep.theory.v(s) - 1.0) << ','
                << cfg.hash() << '\n';
            csv << kljn::to_string(s) << ",i2," << kljn::format_number(rep.theory.i(s)) << ','
                << kljn::format_number(cal.msi) << ',' << kljn::format_number(cal.msi / rep.theory.i(s) - 1.0) << ','
                << cfg.hash() << '\n';
        }
        write_out(opt.out_path, csv.str());
    }
    return 0;
}

int cmd_sweep(const Options& opt)
{
    const auto cfg = resolve_config(opt);
    if (opt.gammas.empty())
        throw kljn::ConfigError("sweep: --gammas is required");
    const auto gammas = kljn::parse_gamma_list(opt.gammas);
    print_warnings(cfg);
    const auto rows = kljn::run_sweep(cfg, gammas, cfg.mode, forced_state(opt));

    std::printf("config %s  mode %s  periods per point %llu\n", cfg.hash().c_str(),
                std::string(kljn::to_string(cfg.mode)).c_str(), static_cast<unsigned long long>(cfg.n_periods));
    std::printf("%-8s %-12s %-12s %-12s %-25s %s\n", "gamma", "type", "analytic", "monte_carlo", "95% interval",
                "errors/trials");
    for (const auto& r : rows) {
        std::printf("%-8g %-12s %-12.4e %-12.4e [%.3e, %.3e]  %llu/%llu\n", r.gamma, kljn::to_string(r.type),
                    r.eps_analytic, r.mc.rate(), r.mc.ci_low, r.mc.ci_high,
                    static_cast<unsigned long long>(r.mc.count), static_cast<unsigned long long>(r.mc.trials));
    }
    if (!opt.out_path.empty()) {
        std::ostringstream csv;
        kljn::write_sweep_csv(csv, cfg, rows);
        write_out(opt.out_path, csv.str());
    }
    return 0;
}

int cmd_session(const Options& opt)
{
    const auto cfg = resolve_config(opt);
    print_warnings(cfg);
    kljn::PeriodOptions popt;
    popt.force_state = forced_state(opt);
    const auto records = kljn::simulate_periods(cfg, cfg.n_periods, cfg.master_seed, popt);
    const auto report = kljn::summarize(records, cfg.mode);
    const auto keys = kljn::extract_key(records, cfg.mode);

    std::printf("config %s  mode %s  periods %llu\n", cfg.hash().c_str(),
                std::string(kljn::to_string(cfg.mode)).c_str(), static_cast<unsigned long long>(report.n_periods));
    const auto line = [](const char* name, const kljn::RateEstimate& r) {
        if (!r.defined())
            std::printf("  %-12s undefined (no periods in this state)\n", name);
        else
            std::printf("  %-12s %.4e  [%.3e, %.3e]  %llu/%llu\n", name, r.rate(), r.ci_low, r.ci_high,
                        static_cast<unsigned long long>(r.count), static_cast<unsigned long long>(r.trials));
    };
    std::printf("dangerous-error rates:\n");
    line("v_00", report.eps_v_00);
    line("v_11", report.eps_v_11);
    line("i_00", report.eps_i_00);
    line("i_11", report.eps_i_11);
    line("combined_00", report.eps_combined_00);
    line("combined_11", report.eps_combined_11);
    if (report.fidelity)
        std::printf("fidelity %.6f  ", *report.fidelity);
    else
        std::printf("fidelity undefined  ");
    std::printf("discard_rate %.6f  key bits %zu  mismatches %zu\n", report.discard_rate, keys.alice.size(),
                keys.mismatches());

    if (!opt.out_path.empty())
        write_out(opt.out_path, kljn::session_json(cfg, report, keys));
    return 0;
}

int cmd_spectra(const Options& opt)
{
    const auto cfg = resolve_config(opt);
    const auto rep = kljn::run_spectra(cfg, opt.samples, opt.bins);
    std::printf("config %s  state 11  samples %zu  s_level %.6g  out-of-support fraction %.3e\n",
                cfg.hash().c_str(), opt.samples, rep.s_level, rep.out_of_support);
    std::printf("%-12s %-14s %-14s %s\n", "f", "empirical", "theory", "ratio");
    for (const auto& row : rep.rows) {
        std::printf("%-12.6g %-14.6g %-14.6g ", row.center(), row.empirical, row.theory);
        if (row.theory > 0.0)
            std::printf("%.4f\n", row.empirical / row.theory);
        else
            std::printf("-\n");
    }
    if (!opt.out_path.empty()) {
        std::ostringstream csv;
        kljn::write_spectra_csv(csv, cfg, rep);
        write_out(opt.out_path, csv.str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"KLJN key exchange bit-error simulator"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "key = value configuration file");
        sub->add_option("--seed", opt.seed, "master seed (overrides config)");
        sub->add_option("--periods", opt.periods, "number of periods (overrides config)");
        sub->add_option("--out", opt.out_path, "write CSV / JSON output here");
        sub->add_option("--mode", opt.mode, "voltage | current | combined");
    };

    auto* levels = app.add_subcommand("levels", "theoretical and calibrated mean-square levels");
    add_common(levels);
    levels->add_option("--calibration-samples", opt.calibration_samples, "samples per state");

    auto* sweep = app.add_subcommand("sweep", "dangerous-error rate vs gamma, analytic and Monte Carlo");
    add_common(sweep);
    sweep->add_option("--gammas", opt.gammas, "comma-separated ascending gamma values");
    sweep->add_option("--force-state", opt.force_state, "00 | 11: restrict to one error type");

    auto* session = app.add_subcommand("session", "full key-exchange session with key extraction");
    add_common(session);
    session->add_option("--force-state", opt.force_state, "00 | 11 | 0110: fix the actual bit situation");

    auto* spectra = app.add_subcommand("spectra", "spectrum of the squared 11-state channel current");
    add_common(spectra);
    spectra->add_option("--samples", opt.samples, "waveform length");
    spectra->add_option("--bins", opt.bins, "number of frequency bins");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*levels)
            return cmd_levels(opt);
        if (*sweep)
            return cmd_sweep(opt);
        if (*session)
            return cmd_session(opt);
        if (*spectra)
            return cmd_spectra(opt);
    } catch (const kljn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const kljn::RuntimeFailure& e) {
        std::cerr << "runtime failure: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
