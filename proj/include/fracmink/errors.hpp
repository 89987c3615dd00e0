#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fracmink {

enum class ErrorKind {
    // numerical
    Pole,
    Overflow,
    Domain,
    Tolerance,
    Radius,
    Divergence,
    QuadFailure,
    // expression language
    Syntax,
    UnknownIdentifier,
    Arity,
    // hypotheses and scenario input
    HypothesisViolation,
    PhiRange,
    BoxViolation,
    NotApplicable,
    Range,
    Parse,
    Constraint,
    Io,
};

std::string_view kind_name(ErrorKind kind) noexcept;

/// True for failures caused by the numerics rather than by user input.
bool is_numerical(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Error(ErrorKind kind, const std::string& message, std::size_t position = npos);

    ErrorKind kind() const noexcept { return kind_; }

    /// Byte offset into the source text for expression errors, npos otherwise.
    std::size_t position() const noexcept { return position_; }

private:
    ErrorKind kind_;
    std::size_t position_;
};

} // namespace fracmink
