#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace osar {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON-path tagged configuration error ("$.radar.n_subcarriers: ...").
struct ConfigPathError : ConfigError {
    ConfigPathError(std::string path, const std::string& msg)
        : ConfigError(path + ": " + msg), path(std::move(path)) {}
    std::string path;
};

struct ParseError : std::runtime_error {
    ParseError(std::size_t offset, const std::string& msg)
        : std::runtime_error("byte " + std::to_string(offset) + ": " + msg), offset(offset) {}
    std::size_t offset;
};

struct StageError : std::logic_error {
    using std::logic_error::logic_error;
};

struct MeasurementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace osar
