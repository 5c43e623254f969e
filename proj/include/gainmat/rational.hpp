#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "gainmat/errors.hpp"

namespace gainmat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;  // always kept normalized

inline BigInt num(const Rational& r) { return numerator(r); }
inline BigInt den(const Rational& r) { return denominator(r); }

// Parses "p", "-p" or "p/q" with big-integer parts. q = 0 is rejected.
inline Rational parse_rational(const std::string& text) {
    auto bad = [&] { return input_error("invalid rational: '" + text + "'"); };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        const BigInt p(text.substr(0, slash));
        const BigInt q(text.substr(slash + 1));
        if (q == 0) throw bad();
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

// Inverse of parse_rational: "p" when integral, else "p/q".
inline std::string to_string(const Rational& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

}  // namespace gainmat
