#pragma once

#include <stdexcept>
#include <string>

namespace tara {

// Bad CLI flags, config files, or parameter ranges. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data: datasets, model files, degenerate
// numerical inputs. Maps to exit code 3.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tara
