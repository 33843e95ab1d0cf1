#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pshbump/mixed_poly.hpp"

namespace pshbump {

/// Closed interval [lo, hi] over doubles. Every arithmetic result is widened
/// outward by one ulp per endpoint, which dominates the rounding error of the
/// underlying operation; conversions from exact rationals are widened by two ulps.
struct Interval {
    double lo = 0, hi = 0;

    Interval() = default;
    Interval(double x) : lo(x), hi(x) {}  // NOLINT(google-explicit-constructor)
    Interval(double l, double h) : lo(l), hi(h) {}

    static Interval widened(double l, double h) {
        return {std::nextafter(l, -HUGE_VAL), std::nextafter(h, HUGE_VAL)};
    }
    static Interval from_rational(const Rational& q) {
        double d = to_double(q);
        Interval r = widened(d, d);
        return widened(r.lo, r.hi);
    }

    bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
    double width() const { return hi - lo; }
    double mag() const { return std::max(std::abs(lo), std::abs(hi)); }

    friend Interval operator+(const Interval& a, const Interval& b) {
        return widened(a.lo + b.lo, a.hi + b.hi);
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        return widened(a.lo - b.hi, a.hi - b.lo);
    }
    friend Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
    friend Interval operator*(const Interval& a, const Interval& b) {
        double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return widened(std::min(std::min(p1, p2), std::min(p3, p4)),
                       std::max(std::max(p1, p2), std::max(p3, p4)));
    }
};

struct CInterval {
    Interval re, im;

    CInterval() = default;
    CInterval(Interval r, Interval i) : re(r), im(i) {}

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }

    friend CInterval operator+(const CInterval& a, const CInterval& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend CInterval operator*(const CInterval& a, const CInterval& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    CInterval conj() const { return {re, -im}; }
};

inline Interval intersect(const Interval& a, const Interval& b) {
    Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    if (r.lo > r.hi) return a;  // numerically empty; either operand is a valid enclosure
    return r;
}

namespace detail {

/// Plain interval evaluation of a polynomial in (zeta, conj(zeta)) (z1 slot).
class RawZetaPoly {
public:
    RawZetaPoly() = default;
    explicit RawZetaPoly(const MixedPoly& p) {
        for (auto& [mo, c] : p.terms()) {
            terms_.push_back({mo.a, mo.b, Interval::from_rational(c.re),
                              Interval::from_rational(c.im)});
            max_pow_ = std::max({max_pow_, mo.a, mo.b});
        }
    }

    CInterval eval(Interval x, Interval y) const {
        std::vector<CInterval> pw(static_cast<std::size_t>(max_pow_) + 1);
        pw[0] = {Interval(1.0), Interval(0.0)};
        CInterval zeta{x, y};
        for (int i = 1; i <= max_pow_; ++i)
            pw[static_cast<std::size_t>(i)] = pw[static_cast<std::size_t>(i - 1)] * zeta;
        CInterval s{Interval(0.0), Interval(0.0)};
        for (auto& t : terms_) {
            CInterval v = pw[static_cast<std::size_t>(t.a)] *
                          pw[static_cast<std::size_t>(t.b)].conj();
            s = s + CInterval{t.cre, t.cim} * v;
        }
        return s;
    }

private:
    struct Term {
        int a, b;
        Interval cre, cim;
    };
    std::vector<Term> terms_;
    int max_pow_ = 0;
};

}  // namespace detail

/// Interval evaluation of a polynomial in (zeta, conj(zeta)) over a rectangle.
/// Combines the naive form with the first-order centered form
///   f(B) in f(c) + df/dzeta(B) (B - c) + df/dconj(zeta)(B) conj(B - c),
/// whose width shrinks quadratically at simple minima; the naive form alone
/// loses one order to interval dependency and stalls subdivision there.
class ZetaIntervalPoly {
public:
    ZetaIntervalPoly() = default;
    explicit ZetaIntervalPoly(const MixedPoly& p) {
        f_ = detail::RawZetaPoly(p);
        MixedPoly dz, dzb;
        for (auto& [mo, c] : p.terms()) {
            if (mo.a > 0) dz.add_term({mo.a - 1, mo.b, 0, 0}, Rational(mo.a) * c);
            if (mo.b > 0) dzb.add_term({mo.a, mo.b - 1, 0, 0}, Rational(mo.b) * c);
        }
        fz_ = detail::RawZetaPoly(dz);
        fzb_ = detail::RawZetaPoly(dzb);
    }

    CInterval eval(Interval x, Interval y) const {
        CInterval naive = f_.eval(x, y);
        double cx = 0.5 * (x.lo + x.hi), cy = 0.5 * (y.lo + y.hi);
        CInterval fc = f_.eval(Interval(cx), Interval(cy));
        CInterval dx{Interval::widened(x.lo - cx, x.hi - cx),
                     Interval::widened(y.lo - cy, y.hi - cy)};
        CInterval centered = fc + fz_.eval(x, y) * dx + fzb_.eval(x, y) * dx.conj();
        return {intersect(naive.re, centered.re), intersect(naive.im, centered.im)};
    }

private:
    detail::RawZetaPoly f_, fz_, fzb_;
};

}  // namespace pshbump
