#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

namespace pshbump {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

/// num/den with sign normalization (the two-argument constructor rejects den < 0).
inline Rational make_rational(long num, long den) { return Rational(num) / Rational(den); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Exact rational from a double (every finite double is a dyadic rational).
inline Rational rational_from_double(double x) {
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp);       // x = m * 2^exp, 0.5 <= |m| < 1
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(mant);
    if (exp >= 0) {
        r *= Rational(BigInt(1) << exp);
    } else {
        r /= Rational(BigInt(1) << -exp);
    }
    return r;
}

/// Exact integer n-th root if one exists.
inline std::optional<BigInt> exact_nth_root(const BigInt& v, unsigned n) {
    if (n == 0) return std::nullopt;
    if (v == 0) return BigInt(0);
    if (v < 0) {
        if (n % 2 == 0) return std::nullopt;
        auto r = exact_nth_root(-v, n);
        if (!r) return std::nullopt;
        return -*r;
    }
    BigInt lo(1), hi(1);
    while (boost::multiprecision::pow(hi, n) < v) hi <<= 1;
    while (lo < hi) {
        BigInt mid = (lo + hi) / 2;
        if (boost::multiprecision::pow(mid, n) < v) lo = mid + 1; else hi = mid;
    }
    if (boost::multiprecision::pow(lo, n) == v) return lo;
    return std::nullopt;
}

inline std::optional<Rational> exact_nth_root(const Rational& q, unsigned n) {
    auto rn = exact_nth_root(rat_num(q), n);
    if (!rn) return std::nullopt;
    auto rd = exact_nth_root(rat_den(q), n);
    if (!rd) return std::nullopt;
    return Rational(*rn, *rd);
}

inline std::string rational_to_string(const Rational& q) {
    std::ostringstream os;
    os << rat_num(q);
    if (rat_den(q) != 1) os << '/' << rat_den(q);
    return os.str();
}

/// Gaussian rational: exact complex number with rational real and imaginary parts.
struct ComplexRational {
    Rational re{0};
    Rational im{0};

    ComplexRational() = default;
    ComplexRational(Rational r) : re(std::move(r)) {}          // NOLINT(google-explicit-constructor)
    ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    ComplexRational(long r) : re(r) {}                         // NOLINT(google-explicit-constructor)

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    ComplexRational conj() const { return {re, -im}; }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexRational operator*(const Rational& s, const ComplexRational& a) {
        return {s * a.re, s * a.im};
    }
    Rational norm2() const { return re * re + im * im; }
    friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
        Rational n2 = b.norm2();
        ComplexRational t = a * b.conj();
        return {t.re / n2, t.im / n2};
    }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

    ComplexRational pow(unsigned n) const {
        ComplexRational r(Rational(1));
        ComplexRational base = *this;
        while (n) {
            if (n & 1u) r = r * base;
            base = base * base;
            n >>= 1u;
        }
        return r;
    }
};

/// Canonical coefficient text: "a/b", "c/d i", or "a/b + c/d i" (minus folded into numerator).
inline std::string to_string(const ComplexRational& c) {
    if (c.is_zero()) return "0";
    std::string s;
    if (c.re != 0) s += rational_to_string(c.re);
    if (c.im != 0) {
        if (!s.empty()) s += (c.im > 0) ? " + " : " - ";
        else if (c.im < 0) s += "-";
        Rational a = boost::multiprecision::abs(c.im);
        if (s.empty() || (s == "-")) {  // bare imaginary
        }
        s += rational_to_string(a) + " i";
    }
    return s;
}

}  // namespace pshbump
