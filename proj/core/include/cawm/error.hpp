#pragma once

#include <stdexcept>
#include <string>

namespace cawm {

enum class ErrorKind {
    InvalidRule,
    Dimension,
    Capacity,
    Range,
    UndefinedReference,
    Parse,
    Io,
    Codec,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// front ends can map it to an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace cawm
