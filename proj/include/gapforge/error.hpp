#pragma once

#include <stdexcept>
#include <string>

namespace gapforge {

// Error categories surfaced by the CLI as machine-readable records.
enum class errc {
    invalid_argument,
    size_limit,
    parse,
    validation,
    dimension_mismatch,
    not_reversible,
    numerical,
    resource,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_argument:   return "invalid-argument";
        case errc::size_limit:         return "size-limit";
        case errc::parse:              return "parse";
        case errc::validation:         return "validation";
        case errc::dimension_mismatch: return "dimension-mismatch";
        case errc::not_reversible:     return "not-reversible";
        case errc::numerical:          return "numerical";
        case errc::resource:           return "resource";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const noexcept { return code_; }
    const char* kind() const noexcept { return errc_name(code_); }

private:
    errc code_;
};

}  // namespace gapforge
