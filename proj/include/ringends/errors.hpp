#pragma once

#include <stdexcept>
#include <string>

namespace ringends {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input: DSL strings, group data files, report options.
struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(msg) {}
};

/// Valid input outside the supported range (field/group combination,
/// closure bounds, non-integral rank data).
struct unsupported_error : error {
    explicit unsupported_error(const std::string& msg) : error(msg) {}
};

/// A violated internal exactness audit. Never recoverable: results are
/// only emitted when every audit passes.
struct internal_error : error {
    explicit internal_error(const std::string& msg) : error(msg) {}
};

} // namespace ringends
