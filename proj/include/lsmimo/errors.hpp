#ifndef LSMIMO_ERRORS_HPP
#define LSMIMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lsmimo {

struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Bit counts that do not line up with the expected framing.
struct FramingError : std::invalid_argument {
    explicit FramingError(const std::string& what) : std::invalid_argument(what) {}
};

// Enumeration sizes beyond the configured cap.
struct CapacityError : std::invalid_argument {
    explicit CapacityError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed or truncated input files.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// No donor frame exists (every frame of the sequence was lost).
struct ConcealmentError : std::runtime_error {
    explicit ConcealmentError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lsmimo

#endif
