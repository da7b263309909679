#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "fincov/errors.hpp"

namespace fincov {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
    require(den != 0, "rational with zero denominator");
    return Rational(Integer(num), Integer(den));
}

/// Parses "p/q" or "p" (optionally signed). Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view digits) {
        std::string_view body = digits;
        if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
            body.remove_prefix(1);
        }
        if (body.empty() || body.find_first_not_of("0123456789") != std::string_view::npos) {
            throw InputError("malformed rational '" + std::string(text) + "'");
        }
        return Integer(std::string(digits));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) {
        throw InputError("rational with zero denominator '" + std::string(text) + "'");
    }
    return Rational(parse_int(text.substr(0, slash)), den);
}

/// Canonical text form: always "p/q" in lowest terms with q > 0.
inline std::string format_rational(const Rational& value) {
    return boost::multiprecision::numerator(value).str() + "/" +
           boost::multiprecision::denominator(value).str();
}

} // namespace fincov
