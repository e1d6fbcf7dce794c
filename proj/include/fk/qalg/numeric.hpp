#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fk {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct OverflowError : std::runtime_error {
    OverflowError() : std::runtime_error("int64 overflow in fast kernel") {}
};

/// 64-bit integer that throws OverflowError instead of wrapping.
struct Checked {
    std::int64_t v = 0;

    Checked() = default;
    Checked(std::int64_t x) : v(x) {}

    Checked& operator+=(const Checked& o) {
        if (__builtin_add_overflow(v, o.v, &v)) throw OverflowError();
        return *this;
    }
    Checked& operator-=(const Checked& o) {
        if (__builtin_sub_overflow(v, o.v, &v)) throw OverflowError();
        return *this;
    }
    Checked& operator*=(const Checked& o) {
        if (__builtin_mul_overflow(v, o.v, &v)) throw OverflowError();
        return *this;
    }
    friend Checked operator+(Checked a, const Checked& b) { return a += b; }
    friend Checked operator-(Checked a, const Checked& b) { return a -= b; }
    friend Checked operator*(Checked a, const Checked& b) { return a *= b; }
    Checked operator-() const {
        if (v == INT64_MIN) throw OverflowError();
        return Checked(-v);
    }
    friend bool operator==(const Checked& a, const Checked& b) { return a.v == b.v; }
    friend bool operator!=(const Checked& a, const Checked& b) { return a.v != b.v; }
    friend bool operator==(const Checked& a, int b) { return a.v == b; }
    friend bool operator!=(const Checked& a, int b) { return a.v != b; }
};

inline Int to_int(const Int& x) { return x; }
inline Int to_int(const Checked& x) { return Int(x.v); }

template <class T>
inline T from_int(const Int& x);

template <>
inline Int from_int<Int>(const Int& x) { return x; }

template <>
inline Checked from_int<Checked>(const Int& x) {
    if (x > Int(INT64_MAX) || x < Int(INT64_MIN)) throw OverflowError();
    return Checked(static_cast<std::int64_t>(x));
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// binom(a, k) for any integer a (generalized, a may be negative)
inline Int gen_binomial(long a, long k) {
    if (k < 0) return 0;
    Int num = 1, den = 1;
    for (long i = 0; i < k; ++i) {
        num *= (a - i);
        den *= (i + 1);
    }
    return num / den;
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

inline Int floor_rational(const Rational& r) {
    return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline Int ceil_rational(const Rational& r) { return -floor_rational(-r); }

inline std::string to_string(const Rational& r) {
    auto n = boost::multiprecision::numerator(r);
    auto d = boost::multiprecision::denominator(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

}  // namespace fk
