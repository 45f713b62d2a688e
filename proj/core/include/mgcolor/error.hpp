#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mgcolor {

enum class ErrorCode {
    MalformedJson,
    UnsupportedDocument,
    StructuralError,
    AddressNotFound,
    ZeroWeightDocument,
    EmptyDocument,
    UnknownColor,
    EmptyGroup,
    RgbOnGroup,
    FrameOutOfRange,
    OutOfBounds,
    EmptyLog,
    NothingToRedo,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported through this type. `path` carries
// a JSON pointer into the input document when the failure is structural.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string path = {})
        : std::runtime_error(message), code_(code), path_(std::move(path)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& path() const noexcept { return path_; }

    // True for errors a user can cause with valid input (CLI exit code 2).
    bool is_domain_error() const noexcept {
        return code_ == ErrorCode::EmptyGroup || code_ == ErrorCode::UnknownColor ||
               code_ == ErrorCode::RgbOnGroup;
    }

private:
    ErrorCode code_;
    std::string path_;
};

}  // namespace mgcolor
