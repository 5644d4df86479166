#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace svlab {

enum class ErrorCode {
    InvalidParams,
    NonFiniteState,
    UnsupportedModel,
    UnsupportedMoment,
    InsufficientData,
    GridTooCoarse,
    InvalidSeries,
    DomainError,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

    ErrorCode code() const noexcept { return code_; }
    // Message without the code prefix, for re-wrapping with more context.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidParams: return "invalid-params";
    case ErrorCode::NonFiniteState: return "non-finite-state";
    case ErrorCode::UnsupportedModel: return "unsupported-model";
    case ErrorCode::UnsupportedMoment: return "unsupported-moment";
    case ErrorCode::InsufficientData: return "insufficient-data";
    case ErrorCode::GridTooCoarse: return "grid-too-coarse";
    case ErrorCode::InvalidSeries: return "invalid-series";
    case ErrorCode::DomainError: return "domain-error";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::IoError: return "io-error";
    }
    return "unknown";
}

} // namespace svlab
