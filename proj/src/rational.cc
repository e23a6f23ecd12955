#include "stochnd/rational.hh"

#include <cctype>

#include "stochnd/error.hh"

namespace stochnd {

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::NonSymmetricRelation: return "NonSymmetricRelation";
        case Errc::ForeignState: return "ForeignState";
        case Errc::NotMeasurable: return "NotMeasurable";
        case Errc::NotMeasurableSet: return "NotMeasurableSet";
        case Errc::SpaceMismatch: return "SpaceMismatch";
        case Errc::IncompatiblePartition: return "IncompatiblePartition";
        case Errc::InvalidPartition: return "InvalidPartition";
        case Errc::InvalidMeasure: return "InvalidMeasure";
        case Errc::NotSurjective: return "NotSurjective";
        case Errc::NotAnEquivalence: return "NotAnEquivalence";
        case Errc::NotACongruence: return "NotACongruence";
        case Errc::NotFinitelySupported: return "NotFinitelySupported";
        case Errc::EmptySupport: return "EmptySupport";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::ThresholdOutOfRange: return "ThresholdOutOfRange";
        case Errc::InvalidModel: return "InvalidModel";
        case Errc::InternalInvariantViolation: return "InternalInvariantViolation";
    }
    return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                           : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw Error(Errc::InvalidMeasure, "malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0)
        throw Error(Errc::InvalidMeasure, "zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    if (negative) q = -q;
    return q;
}

std::string format_rational(const Rational& value) {
    Rational q = value;
    q.canonicalize();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace stochnd
