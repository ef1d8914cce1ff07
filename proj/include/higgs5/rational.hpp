#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace higgs5 {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational scalar. cpp_rational keeps the value canonical (lowest
/// terms, positive denominator), which makes equality structural.
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when an operation is mathematically undefined for its input
/// (division by zero, non-logarithmic pole, unstable input, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown on malformed external input (bad rational string, schema
/// violation). Mapped to exit code 2 by the CLI.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Integer rat_num(const Rational& r) { return numerator(r); }
inline Integer rat_den(const Rational& r) { return denominator(r); }

/// Serializes as "p/q", or "p" when q = 1.
inline std::string rat_to_string(const Rational& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

/// Parses "p" or "p/q" with q > 0 after sign normalization; q = 0 is malformed.
inline Rational rat_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer p(s.substr(0, slash));
        Integer q(s.substr(slash + 1));
        if (q == 0) throw ParseError("rational with zero denominator: " + s);
        return Rational(p, q);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("malformed rational: " + s);
    }
}

} // namespace higgs5
