#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stochnd {

enum class Errc {
    NonSymmetricRelation,
    ForeignState,
    NotMeasurable,
    NotMeasurableSet,
    SpaceMismatch,
    IncompatiblePartition,
    InvalidPartition,
    InvalidMeasure,
    NotSurjective,
    NotAnEquivalence,
    NotACongruence,
    NotFinitelySupported,
    EmptySupport,
    SyntaxError,
    ThresholdOutOfRange,
    InvalidModel,
    InternalInvariantViolation,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

/// Raised by quotient() when two representatives of one class push their
/// portfolios to different upper sets.
class CongruenceError : public Error {
  public:
    CongruenceError(std::string first, std::string second)
        : Error(Errc::NotACongruence,
                "not a congruence: " + first + " and " + second +
                    " induce different quotient portfolios"),
          first_(std::move(first)), second_(std::move(second)) {}

    const std::string& first() const noexcept { return first_; }
    const std::string& second() const noexcept { return second_; }

  private:
    std::string first_;
    std::string second_;
};

/// Raised by the formula parser. `position` is a 0-based byte offset.
class SyntaxError : public Error {
  public:
    SyntaxError(Errc code, std::size_t position, const std::string& message)
        : Error(code, message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

}  // namespace stochnd
