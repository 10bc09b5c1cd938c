#pragma once

// Exact arithmetic carriers. Indices of Wahl singularities grow like 2^length,
// so nothing here is allowed to round.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace wahl {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when an input violates a documented precondition.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a request exceeds a configured enumeration cap.
class ResourceLimit : public std::length_error {
public:
    using std::length_error::length_error;
};

inline Integer gcd(Integer a, Integer b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Integer r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    return Rational(num, den);
}

/// Always "num/den", including integers ("4/1"). Denominator positive, lowest terms.
inline std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "num/den" or a bare integer.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        return make_rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
    } catch (const std::runtime_error&) {
        throw DomainError("malformed rational: '" + text + "'");
    }
}

/// Floor of the nonnegative square root; exact for perfect squares.
inline Integer isqrt(const Integer& n) {
    if (n < 0) throw DomainError("isqrt of negative value");
    return boost::multiprecision::sqrt(n);
}

} // namespace wahl
