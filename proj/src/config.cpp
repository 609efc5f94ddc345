#include "kljn/config.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "kljn/errors.hpp"

namespace kljn {

std::string format_number(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string_view to_string(DecisionMode m) noexcept
{
    switch (m) {
    case DecisionMode::voltage_only: return "voltage";
    case DecisionMode::current_only: return "current";
    case DecisionMode::combined: return "combined";
    }
    return "?";
}

DecisionMode parse_mode(std::string_view text)
{
    if (text == "voltage" || text == "voltage_only")
        return DecisionMode::voltage_only;
    if (text == "current" || text == "current_only")
        return DecisionMode::current_only;
    if (text == "combined")
        return DecisionMode::combined;
    throw ConfigError("unknown mode '" + std::string(text) + "' (expected voltage, current or combined)");
}

PhysicsConstants SystemConfig::constants() const
{
    return normalized ? PhysicsConstants::normalized_units() : PhysicsConstants::si(t_eff);
}

std::size_t SystemConfig::samples_per_period() const
{
    const double n = std::round(tau() * sample_rate());
    return n < 0.0 || !std::isfinite(n) ? 0 : static_cast<std::size_t>(n);
}

void SystemConfig::validate() const
{
    resistors().validate();
    constants().validate();
    if (!(b_kljn > 0.0) || !std::isfinite(b_kljn))
        throw ConfigError("b_kljn must be > 0");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ConfigError("gamma must be > 0");
    if (oversample < 2)
        throw ConfigError("oversample must be >= 2 (sample_rate >= 2*b_kljn)");
    fractions.validate();
    if (n_periods < 1)
        throw ConfigError("n_periods must be >= 1");
    if (samples_per_period() < 2)
        throw ConfigError("gamma*oversample/2 must give at least 2 samples per period");
}

std::vector<std::string> SystemConfig::warnings() const
{
    std::vector<std::string> out = resistors().warnings();
    for (auto& w : window().warnings())
        out.push_back(std::move(w));
    const double exact = tau() * sample_rate();
    if (std::abs(exact - std::round(exact)) > 1e-9 * std::max(1.0, exact))
        out.push_back("gamma*oversample/2 = " + format_number(exact) + " is not an integer; period length rounded");
    return out;
}

std::string SystemConfig::canonical() const
{
    std::ostringstream out;
    out << "r=" << format_number(r) << '\n'
        << "alpha=" << format_number(alpha) << '\n'
        << "units=" << (normalized ? "normalized" : "si") << '\n'
        << "t_eff=" << format_number(t_eff) << '\n'
        << "b_kljn=" << format_number(b_kljn) << '\n'
        << "gamma=" << format_number(gamma) << '\n'
        << "oversample=" << oversample << '\n'
        << "beta=" << format_number(fractions.beta) << '\n'
        << "delta=" << format_number(fractions.delta) << '\n'
        << "lambda=" << format_number(fractions.lambda) << '\n'
        << "rho=" << format_number(fractions.rho) << '\n'
        << "n_periods=" << n_periods << '\n'
        << "master_seed=" << master_seed << '\n'
        << "mode=" << to_string(mode) << '\n';
    return out.str();
}

std::string SystemConfig::hash() const
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& text, const std::string& where)
{
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v))
        throw ConfigError(where + ": expected a finite number, got '" + text + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& where)
{
    std::uint64_t v = 0;
    int base = 10;
    std::string_view digits = text;
    if (digits.starts_with("0x") || digits.starts_with("0X")) {
        base = 16;
        digits.remove_prefix(2);
    }
    auto res = std::from_chars(digits.data(), digits.data() + digits.size(), v, base);
    if (digits.empty() || res.ec != std::errc{} || res.ptr != digits.data() + digits.size())
        throw ConfigError(where + ": expected an unsigned integer, got '" + text + "'");
    return v;
}

} // namespace

SystemConfig parse_config(std::istream& in, SystemConfig cfg)
{
    std::map<std::string, int> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string body = trim(line);
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        const std::string where = "line " + std::to_string(lineno);
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        const std::string field = where + " (" + key + ")";
        if (value.empty())
            throw ConfigError(field + ": missing value");
        if (auto [it, inserted] = seen.emplace(key, lineno); !inserted)
            throw ConfigError(field + ": duplicate key, first set on line " + std::to_string(it->second));

        if (key == "r")
            cfg.r = parse_double(value, field);
        else if (key == "alpha")
            cfg.alpha = parse_double(value, field);
        else if (key == "units") {
            if (value == "normalized")
                cfg.normalized = true;
            else if (value == "si")
                cfg.normalized = false;
            else
                throw ConfigError(field + ": expected 'normalized' or 'si'");
        } else if (key == "t_eff")
            cfg.t_eff = parse_double(value, field);
        else if (key == "b_kljn")
            cfg.b_kljn = parse_double(value, field);
        else if (key == "gamma")
            cfg.gamma = parse_double(value, field);
        else if (key == "oversample")
            cfg.oversample = static_cast<int>(parse_u64(value, field));
        else if (key == "beta")
            cfg.fractions.beta = parse_double(value, field);
        else if (key == "delta")
            cfg.fractions.delta = parse_double(value, field);
        else if (key == "lambda")
            cfg.fractions.lambda = parse_double(value, field);
        else if (key == "rho")
            cfg.fractions.rho = parse_double(value, field);
        else if (key == "n_periods")
            cfg.n_periods = parse_u64(value, field);
        else if (key == "master_seed")
            cfg.master_seed = parse_u64(value, field);
        else if (key == "mode") {
            try {
                cfg.mode = parse_mode(value);
            } catch (const ConfigError& e) {
                throw ConfigError(field + ": " + e.what());
            }
        } else
            throw ConfigError(field + ": unknown key");
    }
    return cfg;
}

SystemConfig load_config(const std::string& path, SystemConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    try {
        return parse_config(in, base);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

} // namespace kljn
