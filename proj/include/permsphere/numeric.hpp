#pragma once

// Exact arithmetic used throughout: arbitrary-precision integers for counts,
// rationals (always in lowest terms, positive denominator) for probabilities.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace permsphere {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// High-precision float for irrational parameters (128-bit mantissa).
using Real128 = boost::multiprecision::number<
    boost::multiprecision::backends::cpp_bin_float<128, boost::multiprecision::backends::digit_base_2>>;

inline double to_double(const Rational& x) { return x.template convert_to<double>(); }

inline Real128 to_real128(const Rational& x) { return Real128(x); }

inline BigInt factorial_big(long long n) {
    if (n < 0) throw std::domain_error("factorial of negative argument");
    BigInt r = 1;
    for (long long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial_big(long long n, long long k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact at each step
    }
    return r;
}

// (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
inline Rational rising_factorial(const Rational& a, int n) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= a + i;
    return r;
}

// x^e for e >= 0, with 0^0 = 1.
inline Rational pow_rational(const Rational& x, long long e) {
    if (e < 0) throw std::domain_error("pow_rational: negative exponent");
    Rational r = 1, b = x;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// [j]_q = 1 + q + ... + q^{j-1}; [0]_q = 0.
inline Rational q_integer(const Rational& q, int j) {
    Rational r = 0, p = 1;
    for (int i = 0; i < j; ++i) {
        r += p;
        p *= q;
    }
    return r;
}

// [n]_q! = prod_{j=1..n} [j]_q.
inline Rational q_factorial(const Rational& q, int n) {
    Rational r = 1;
    for (int j = 1; j <= n; ++j) r *= q_integer(q, j);
    return r;
}

// Round to nearest integer, ties to even.
inline BigInt round_half_even(const Rational& x) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    BigInt q = num / den;
    BigInt rem = num - q * den;
    if (rem < 0) {  // make floor, remainder nonnegative
        q -= 1;
        rem += den;
    }
    const BigInt twice = 2 * rem;
    if (twice > den) return q + 1;
    if (twice < den) return q;
    return (q % 2 == 0) ? q : q + 1;
}

inline long long round_half_even_ll(const Rational& x) {
    return round_half_even(x).template convert_to<long long>();
}

// Parses "p/q", an integer, or a decimal string ("0.25") into an exact rational.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const BigInt num(s.substr(0, slash));
        const BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num, den);
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    const std::string ipart = s.substr(0, dot);
    const std::string fpart = s.substr(dot + 1);
    if (fpart.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("parse_rational: bad decimal");
    BigInt den = 1;
    for (std::size_t i = 0; i < fpart.size(); ++i) den *= 10;
    const bool neg = !ipart.empty() && ipart[0] == '-';
    const BigInt whole = ipart.empty() || ipart == "-" ? BigInt(0) : BigInt(ipart);
    BigInt num = boost::multiprecision::abs(whole) * den + (fpart.empty() ? BigInt(0) : BigInt(fpart));
    if (neg) num = -num;
    return Rational(num, den);
}

inline std::string format_rational(const Rational& x) {
    const BigInt den = boost::multiprecision::denominator(x);
    std::string s = boost::multiprecision::numerator(x).str();
    if (den != 1) s += "/" + den.str();
    return s;
}

// A parameter in [0, +inf]; q and theta admit the point at infinity.
struct ExtParam {
    Rational value{0};
    bool infinite = false;

    ExtParam() = default;
    ExtParam(const Rational& v) : value(v) {}  // NOLINT(google-explicit-constructor)
    ExtParam(int v) : value(v) {}              // NOLINT(google-explicit-constructor)
    static ExtParam inf() {
        ExtParam p;
        p.infinite = true;
        return p;
    }
    bool is_zero() const { return !infinite && value == 0; }
    bool is_one() const { return !infinite && value == 1; }
    friend bool operator==(const ExtParam& a, const ExtParam& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
};

inline ExtParam parse_ext_param(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "Inf") return ExtParam::inf();
    return ExtParam(parse_rational(s));
}

inline std::string format_ext_param(const ExtParam& p) {
    return p.infinite ? "inf" : format_rational(p.value);
}

}  // namespace permsphere
