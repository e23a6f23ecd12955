#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stochnd {

/// Arbitrary precision rational, always kept in lowest terms.
using Rational = mpq_class;

/// Parses "p/q" or "p" (optionally signed). Throws Error(InvalidMeasure)
/// on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& q);

}  // namespace stochnd
