#pragma once

#include <stdexcept>
#include <string>

namespace diatopics {

// Error taxonomy mirrored by the CLI exit codes:
//   ConfigError -> 1, IoError -> 2, DataError -> 3.

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace diatopics
