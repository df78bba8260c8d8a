#include "cawm/error.hpp"

namespace cawm {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidRule: return "invalid-rule";
        case ErrorKind::Dimension: return "dimension";
        case ErrorKind::Capacity: return "capacity";
        case ErrorKind::Range: return "range";
        case ErrorKind::UndefinedReference: return "undefined-reference";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Io: return "io";
        case ErrorKind::Codec: return "codec";
    }
    return "unknown";
}

}  // namespace cawm
