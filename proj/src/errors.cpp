#include "fracmink/errors.hpp"

namespace fracmink {

std::string_view kind_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Pole: return "PoleError";
        case ErrorKind::Overflow: return "OverflowError";
        case ErrorKind::Domain: return "DomainError";
        case ErrorKind::Tolerance: return "ToleranceError";
        case ErrorKind::Radius: return "RadiusError";
        case ErrorKind::Divergence: return "DivergenceError";
        case ErrorKind::QuadFailure: return "QuadFailure";
        case ErrorKind::Syntax: return "SyntaxError";
        case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorKind::Arity: return "ArityError";
        case ErrorKind::HypothesisViolation: return "HypothesisViolation";
        case ErrorKind::PhiRange: return "PhiRangeError";
        case ErrorKind::BoxViolation: return "BoxViolation";
        case ErrorKind::NotApplicable: return "NotApplicable";
        case ErrorKind::Range: return "RangeError";
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::Constraint: return "ConstraintError";
        case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

bool is_numerical(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Pole:
        case ErrorKind::Overflow:
        case ErrorKind::Domain:
        case ErrorKind::Tolerance:
        case ErrorKind::Radius:
        case ErrorKind::Divergence:
        case ErrorKind::QuadFailure:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorKind kind, const std::string& message, std::size_t position)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + message),
      kind_(kind),
      position_(position) {}

} // namespace fracmink
