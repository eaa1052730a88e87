#pragma once

#include <stdexcept>
#include <string>

namespace asdml {

// Configuration problems: bad CLI usage, malformed config, out-of-range values.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Data problems: unreadable files, parse failures, schema mismatches, empty data.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Training failures: degenerate training sets, diverging optimizers.
struct TrainError : std::runtime_error {
    explicit TrainError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace asdml
