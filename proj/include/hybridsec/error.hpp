#pragma once

#include <stdexcept>
#include <string>

namespace hybridsec {

/// Invalid parameters, malformed configuration, or an unsupported combination.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A file could not be read, parsed, or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hybridsec
