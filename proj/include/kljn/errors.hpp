#pragma once

#include <stdexcept>
#include <string>

namespace kljn {

/// Invalid parameter or configuration. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Failure while running a simulation (exit code 3).
class RuntimeFailure : public std::runtime_error {
public:
    explicit RuntimeFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Decision thresholds overlap so that no measurement can read as 01/10.
class EmptySecureBandError : public RuntimeFailure {
public:
    EmptySecureBandError(const std::string& quantity, double low_cut, double high_cut);

    const std::string& quantity() const noexcept { return quantity_; }
    double low_cut() const noexcept { return low_cut_; }
    double high_cut() const noexcept { return high_cut_; }

private:
    std::string quantity_;
    double low_cut_;
    double high_cut_;
};

} // namespace kljn
