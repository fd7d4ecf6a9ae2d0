#pragma once

// Exact rational scalars. Everything geometric in this library runs on
// unbounded-precision rationals; there is no floating point on any path
// that decides a combinatorial question. Doubles appear only in
// human-readable summaries.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace polydual {

using Int = boost::multiprecision::cpp_int;

// Always stored in lowest terms with a positive denominator (the backend
// maintains that invariant on every operation).
using Rational = boost::multiprecision::cpp_rational;

// Builds num/den, accepting a negative or zero denominator gracefully
// (zero throws; the sign moves to the numerator).
inline Rational make_rational(Int num, Int den) {
    if (den == 0)
        throw std::domain_error("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

// Parses "p" or "p/q". Used by the .poly reader and the CLI.
inline Rational parse_rational(std::string_view text) {
    auto bad = [&] {
        throw std::invalid_argument("rational: cannot parse \"" + std::string(text) + "\"");
    };
    if (text.empty())
        bad();
    auto parse_int = [&](std::string_view s) -> Int {
        if (s.empty())
            bad();
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size())
            bad();
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                bad();
        return Int(std::string(s));
    };
    std::size_t slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text));
    return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

// "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
    return r.str();
}

inline double to_double(const Rational& r) {
    return r.template convert_to<double>();
}

inline int sign_of(const Rational& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

inline Rational abs_of(const Rational& r) {
    return r < 0 ? Rational(-r) : r;
}

}  // namespace polydual
