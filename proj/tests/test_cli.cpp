#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kljn/commands.hpp"
#include "kljn/errors.hpp"

using namespace kljn;
namespace fs = std::filesystem;

namespace {

SystemConfig parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_config(in);
}

std::string error_of(const std::string& text)
{
    try {
        parse(text).validate();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

fs::path temp_dir()
{
    auto dir = fs::temp_directory_path() / "kljn_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& text)
{
    const auto path = temp_dir() / name;
    std::ofstream(path) << text;
    return path.string();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& args)
{
    const std::string cmd = std::string(KLJN_SIM_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing")
{
    const auto cfg = parse("# comment\nr = 2.5   # Ohm\nalpha=20\nunits = si\nt_eff = 1e18\nb_kljn=1000\n"
                           "gamma = 50\nlambda = 0.4\nn_periods = 12\nmaster_seed = 0x10\nmode = current\n");
    CHECK(cfg.r == 2.5);
    CHECK(cfg.alpha == 20.0);
    CHECK_FALSE(cfg.normalized);
    CHECK(cfg.t_eff == 1e18);
    CHECK(cfg.b_kljn == 1000.0);
    CHECK(cfg.fractions.lambda == 0.4);
    CHECK(cfg.n_periods == 12);
    CHECK(cfg.master_seed == 16);
    CHECK(cfg.mode == DecisionMode::current_only);
    CHECK(cfg.samples_per_period() == 100);
    CHECK(cfg.tau() == doctest::Approx(0.025));
}

TEST_CASE("config diagnostics name the line and field")
{
    CHECK(error_of("alpha = 2\nbogus = 1\n").find("line 2 (bogus): unknown key") != std::string::npos);
    CHECK(error_of("alpha = 2\nalpha = 3\n").find("duplicate") != std::string::npos);
    CHECK(error_of("gamma = abc\n").find("line 1 (gamma)") != std::string::npos);
    CHECK(error_of("alpha = 0.5\n").find("alpha must be > 1") != std::string::npos);
    CHECK(error_of("n_periods = 0\n").find("n_periods") != std::string::npos);
    CHECK(error_of("lambda = 1\n").find("lambda") != std::string::npos);
    CHECK(error_of("oversample = 1\n").find("oversample") != std::string::npos);
    CHECK(error_of("units = kelvin\n").find("units") != std::string::npos);
    CHECK(error_of("gamma 5\n").find("key = value") != std::string::npos);
}

TEST_CASE("config hash tracks every field")
{
    SystemConfig a;
    SystemConfig b = a;
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    b.fractions.rho = 0.25;
    CHECK(a.hash() != b.hash());
}

TEST_CASE("levels report")
{
    SystemConfig cfg;
    cfg.alpha = 10.0;
    const auto rep = levels_report(cfg, 1u << 18);
    CHECK(rep.theory.i(BitState::b11) == doctest::Approx(0.05));
    CHECK(rep.theory.i(BitState::b0110) == doctest::Approx(0.0909090909));
    CHECK(rep.theory.i(BitState::b00) == doctest::Approx(0.5));
    std::ostringstream out;
    print_levels(out, cfg, rep);
    CHECK(out.str().find("0.0909091") != std::string::npos);
    CHECK(out.str().find("0.05 ") != std::string::npos);

    cfg.normalized = false;
    cfg.t_eff = 1e18;
    std::ostringstream si;
    print_levels(si, cfg, levels_report(cfg, 1u << 16));
    CHECK(si.str().find("k = 1.380649e-23") != std::string::npos);
}

TEST_CASE("sweep analytic column and error types")
{
    SystemConfig cfg;
    cfg.n_periods = 200;
    const auto current = run_sweep(cfg, {100.0}, DecisionMode::current_only, BitState::b11);
    REQUIRE(current.size() == 1);
    CHECK(current[0].type == ErrorType::current_11);
    CHECK(current[0].eps_analytic == doctest::Approx(1.114e-3).epsilon(1e-3));
    CHECK(current[0].mc.trials == 200);

    const auto combined = run_sweep(cfg, {100.0, 200.0}, DecisionMode::combined, BitState::b00);
    REQUIRE(combined.size() == 2);
    CHECK(combined[0].eps_analytic == doctest::Approx(1.24e-6).epsilon(0.005));
    CHECK(combined[1].eps_analytic == doctest::Approx(4.6e-12).epsilon(0.02));

    CHECK(run_sweep(cfg, {30.0}, DecisionMode::voltage_only).size() == 2);
    CHECK_THROWS_AS(run_sweep(cfg, {}, DecisionMode::combined), ConfigError);
    CHECK_THROWS_AS(run_sweep(cfg, {50.0, 40.0}, DecisionMode::combined), ConfigError);
    CHECK_THROWS_AS(run_sweep(cfg, {50.0}, DecisionMode::combined, BitState::b0110), ConfigError);
    CHECK_THROWS_AS(parse_gamma_list(""), ConfigError);
    CHECK_THROWS_AS(parse_gamma_list("10,x"), ConfigError);
    CHECK(parse_gamma_list("10, 20,30") == std::vector<double>{10, 20, 30});
}

TEST_CASE("sweep csv schema")
{
    SystemConfig cfg;
    cfg.n_periods = 100;
    std::ostringstream csv;
    write_sweep_csv(csv, cfg, run_sweep(cfg, {40.0}, DecisionMode::current_only));
    std::istringstream lines(csv.str());
    std::string header, row;
    std::getline(lines, header);
    CHECK(header == "gamma,eps_analytic,eps_mc,ci_low,ci_high,n_errors,n_trials,error_type,config_hash");
    int rows = 0;
    while (std::getline(lines, row)) {
        ++rows;
        CHECK(row.ends_with("," + cfg.hash()));
    }
    CHECK(rows == 2);
}

TEST_CASE("spectra theory column")
{
    SystemConfig cfg;
    cfg.oversample = 8;
    const auto rep = run_spectra(cfg, 1u << 16, 64);
    const double peak = 2.0 * cfg.b_kljn * rep.s_level * rep.s_level;
    CHECK(squared_noise_psd_theory(0.0, rep.s_level, cfg.b_kljn) == doctest::Approx(peak));
    CHECK(rep.rows.front().theory == doctest::Approx(peak).epsilon(0.02));
    for (const auto& row : rep.rows)
        if (row.f_low >= 2.0 * cfg.b_kljn)
            CHECK(row.theory == 0.0);
}

TEST_CASE("session json is deterministic and closes its accounting")
{
    SystemConfig cfg;
    cfg.gamma = 20.0;
    const auto records = simulate_periods(cfg, 500, 3);
    const auto rep = summarize(records, cfg.mode);
    const auto text = session_json(cfg, rep, extract_key(records, cfg.mode));
    const auto again = simulate_periods_serial(cfg, 500, 3);
    CHECK(text == session_json(cfg, summarize(again, cfg.mode), extract_key(again, cfg.mode)));
    CHECK(rep.combined_total() == 500);
    CHECK(text.find("\"alice_hex\"") != std::string::npos);
    CHECK(text.find("\"hash\": \"" + cfg.hash() + "\"") != std::string::npos);
}

TEST_CASE("command-line exit codes and reproducible files")
{
    const auto good = write_file("good.cfg", "alpha = 100\ngamma = 20\nn_periods = 300\n");
    const auto bad_alpha = write_file("bad_alpha.cfg", "alpha = 0.5\n");
    const auto zero = write_file("zero.cfg", "n_periods = 0\n");
    const auto empty_band = write_file("band.cfg", "alpha = 1.2\nlambda = 0.9\nrho = 0.9\n");
    const auto dir = temp_dir();

    CHECK(run("levels --config " + good + " --calibration-samples 65536") == 0);
    CHECK(run("levels --config " + bad_alpha) == 2);
    CHECK(run("session --config " + zero) == 2);
    CHECK(run("session --config " + good + " --periods 0") == 2);
    CHECK(run("sweep --config " + good) == 2);
    CHECK(run("sweep --config " + good + " --gammas ''") == 2);
    CHECK(run("session --config " + empty_band) == 3);
    CHECK(run("session --config " + good + " --mode sideways") == 2);
    CHECK(run("frobnicate") == 2);

    const auto a = (dir / "a.json").string(), b = (dir / "b.json").string();
    CHECK(run("session --config " + good + " --seed 5 --out " + a) == 0);
    CHECK(run("session --config " + good + " --seed 5 --out " + b) == 0);
    CHECK(read_file(a) == read_file(b));
    CHECK_FALSE(read_file(a).empty());

    const auto c = (dir / "c.csv").string(), d = (dir / "d.csv").string();
    CHECK(run("sweep --config " + good + " --gammas 10,20 --mode current --out " + c) == 0);
    CHECK(std::system(("OMP_NUM_THREADS=3 " + std::string(KLJN_SIM_PATH) + " sweep --config " + good +
                       " --gammas 10,20 --mode current --out " + d + " > /dev/null")
                          .c_str()) == 0);
    CHECK(read_file(c) == read_file(d));

    const auto e = (dir / "e.csv").string();
    CHECK(run("spectra --config " + good + " --samples 65536 --bins 32 --out " + e) == 0);
    CHECK(read_file(e).starts_with("f,empirical_psd,theory_psd,config_hash\n"));
}

}
