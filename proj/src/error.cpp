#include "hestoncal/error.hpp"

namespace hestoncal {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateParams: return "DegenerateParams";
    case ErrorKind::NumericRange: return "NumericRange";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DegenerateCf: return "DegenerateCf";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyFile: return "EmptyFile";
    }
    return "Unknown";
}

} // namespace hestoncal
