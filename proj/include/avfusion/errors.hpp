#pragma once

#include <stdexcept>
#include <string>

namespace avfusion {

// Bad invocation: unknown flag, unknown config key, malformed override.
// The CLI maps this to exit code 1.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input data: malformed record, missing file, inconsistent metadata.
// The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace avfusion
