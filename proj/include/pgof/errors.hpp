#pragma once

#include <stdexcept>
#include <string>

namespace pgof {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EstimationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResamplingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pgof
