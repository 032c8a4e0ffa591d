#pragma once

// Exact rational scalar used throughout the library.  No floating point
// enters any geometric predicate; doubles appear only at the SVG layer.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tropq {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline Rat make_rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    return Rat(Int(num), Int(den));
}

inline int sgn(const Rat& r) { return r.sign(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// "num/den" or plain "num".
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rat: zero denominator");
    return Rat(num, den);
}

inline std::string rat_str(const Rat& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

// Fixed-point decimal expansion, exact long division; deterministic across
// platforms, used by the SVG writer.
inline std::string rat_decimal(const Rat& r, int digits = 6) {
    Int num = rat_num(r), den = rat_den(r);
    std::string sign;
    if (num < 0) { sign = "-"; num = -num; }
    Int ip = num / den;
    Int rem = num % den;
    std::string out = sign + ip.str();
    if (digits <= 0) return out;
    std::string frac;
    for (int i = 0; i < digits; ++i) {
        rem *= 10;
        frac += char('0' + int(rem / den));
        rem %= den;
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    return out;
}

inline Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) { Int t = a % b; a = b; b = t; }
    return a;
}

inline Int int_lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    Int g = int_gcd(a, b);
    Int r = (a / g) * b;
    return r < 0 ? Int(-r) : r;
}

}  // namespace tropq
