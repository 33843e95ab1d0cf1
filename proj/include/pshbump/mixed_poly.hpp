#pragma once

#include <array>
#include <cassert>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pshbump/rational.hpp"

namespace pshbump {

/// Exponents of z1^a conj(z1)^b z2^m conj(z2)^n; ordered lexicographically on (a,b,m,n).
struct Monomial {
    int a = 0, b = 0, m = 0, n = 0;

    int total_degree() const { return a + b + m + n; }
    int degree_z1() const { return a + b; }
    int degree_z2() const { return m + n; }
    Monomial conj() const { return {b, a, n, m}; }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Real-valued (or explicitly holomorphic) polynomial in z1, conj(z1), z2, conj(z2)
/// with exact Gaussian-rational coefficients. No zero coefficients are stored.
/// Values are immutable in spirit: every operation returns a new polynomial.
class MixedPoly {
public:
    using TermMap = std::map<Monomial, ComplexRational>;

    MixedPoly() = default;
    explicit MixedPoly(TermMap terms) : terms_(std::move(terms)) { prune(); }

    static MixedPoly constant(ComplexRational c) {
        MixedPoly p;
        p.add_term({0, 0, 0, 0}, std::move(c));
        return p;
    }
    static MixedPoly monomial(Monomial mo, ComplexRational c = ComplexRational(Rational(1))) {
        MixedPoly p;
        p.add_term(mo, std::move(c));
        return p;
    }
    static MixedPoly z1() { return monomial({1, 0, 0, 0}); }
    static MixedPoly z1bar() { return monomial({0, 1, 0, 0}); }
    static MixedPoly z2() { return monomial({0, 0, 1, 0}); }
    static MixedPoly z2bar() { return monomial({0, 0, 0, 1}); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    ComplexRational coeff(const Monomial& mo) const {
        auto it = terms_.find(mo);
        return it == terms_.end() ? ComplexRational() : it->second;
    }

    void add_term(const Monomial& mo, const ComplexRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(mo, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int total_degree() const {
        int d = 0;
        for (auto& [mo, c] : terms_) d = std::max(d, mo.total_degree());
        return d;
    }

    /// Coefficient-wise complex conjugate combined with the bar-swap of variables;
    /// for real-valued polynomials this is the identity.
    MixedPoly conj() const {
        TermMap t;
        for (auto& [mo, c] : terms_) t[mo.conj()] = c.conj();
        return MixedPoly(std::move(t));
    }

    /// Reality invariant: coeff(a,b,m,n) == conj(coeff(b,a,n,m)).
    bool is_real_valued() const {
        for (auto& [mo, c] : terms_) {
            if (coeff(mo.conj()) != c.conj()) return false;
        }
        return true;
    }

    /// All terms purely holomorphic (b = n = 0).
    bool is_holomorphic() const {
        for (auto& [mo, c] : terms_)
            if (mo.b != 0 || mo.n != 0) return false;
        return true;
    }

    friend MixedPoly operator+(const MixedPoly& x, const MixedPoly& y) {
        MixedPoly r = x;
        for (auto& [mo, c] : y.terms_) r.add_term(mo, c);
        return r;
    }
    friend MixedPoly operator-(const MixedPoly& x, const MixedPoly& y) {
        MixedPoly r = x;
        for (auto& [mo, c] : y.terms_) r.add_term(mo, -c);
        return r;
    }
    friend MixedPoly operator-(const MixedPoly& x) {
        TermMap t;
        for (auto& [mo, c] : x.terms_) t[mo] = -c;
        return MixedPoly(std::move(t));
    }
    friend MixedPoly operator*(const MixedPoly& x, const MixedPoly& y) {
        MixedPoly r;
        for (auto& [ma, ca] : x.terms_) {
            for (auto& [mb, cb] : y.terms_) {
                r.add_term({ma.a + mb.a, ma.b + mb.b, ma.m + mb.m, ma.n + mb.n}, ca * cb);
            }
        }
        return r;
    }
    friend MixedPoly operator*(const ComplexRational& s, const MixedPoly& x) {
        MixedPoly r;
        for (auto& [mo, c] : x.terms_) r.add_term(mo, s * c);
        return r;
    }
    friend MixedPoly operator*(const Rational& s, const MixedPoly& x) {
        return ComplexRational(s) * x;
    }
    friend bool operator==(const MixedPoly& x, const MixedPoly& y) { return x.terms_ == y.terms_; }

    MixedPoly pow(unsigned k) const {
        MixedPoly r = constant(ComplexRational(Rational(1)));
        MixedPoly base = *this;
        while (k) {
            if (k & 1u) r = r * base;
            base = base * base;
            k >>= 1u;
        }
        return r;
    }

    /// Exact evaluation at a Gaussian-rational point.
    ComplexRational evaluate_exact(const ComplexRational& w1, const ComplexRational& w2) const {
        ComplexRational s;
        ComplexRational c1 = w1.conj(), c2 = w2.conj();
        for (auto& [mo, c] : terms_) {
            s = s + c * w1.pow(mo.a) * c1.pow(mo.b) * w2.pow(mo.m) * c2.pow(mo.n);
        }
        return s;
    }

    /// Floating evaluation; full complex result (real polynomials carry a tiny imaginary residue).
    std::complex<double> evaluate_complex(std::complex<double> w1, std::complex<double> w2) const {
        int d1a = 0, d1b = 0, d2m = 0, d2n = 0;
        for (auto& [mo, c] : terms_) {
            d1a = std::max(d1a, mo.a);
            d1b = std::max(d1b, mo.b);
            d2m = std::max(d2m, mo.m);
            d2n = std::max(d2n, mo.n);
        }
        auto pows = [](std::complex<double> z, int d) {
            std::vector<std::complex<double>> p(static_cast<std::size_t>(d) + 1);
            p[0] = 1.0;
            for (int i = 1; i <= d; ++i) p[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i - 1)] * z;
            return p;
        };
        auto p1 = pows(w1, d1a), q1 = pows(std::conj(w1), d1b);
        auto p2 = pows(w2, d2m), q2 = pows(std::conj(w2), d2n);
        std::complex<double> s = 0.0;
        for (auto& [mo, c] : terms_) {
            s += c.to_complex() * p1[static_cast<std::size_t>(mo.a)] * q1[static_cast<std::size_t>(mo.b)] *
                 p2[static_cast<std::size_t>(mo.m)] * q2[static_cast<std::size_t>(mo.n)];
        }
        return s;
    }

    /// Floating evaluation of a real-valued polynomial; the imaginary residue is discarded.
    double evaluate(std::complex<double> w1, std::complex<double> w2) const {
        return evaluate_complex(w1, w2).real();
    }

    /// Sum of |coeff| as doubles, a cheap coefficient-scale measure.
    double coeff_scale() const {
        double s = 0;
        for (auto& [mo, c] : terms_) s += std::abs(c.to_complex());
        return s;
    }

private:
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.is_zero()) it = terms_.erase(it); else ++it;
        }
    }

    TermMap terms_;
};

/// Canonical text form: terms in lexicographic monomial order, coefficients as "a/b + c/d i".
/// parse_poly round-trips this exactly.
inline std::string format_poly(const MixedPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [mo, c] : p.terms()) {
        std::string coef;
        bool needs_parens = (c.re != 0 && c.im != 0);
        if (needs_parens) {
            coef = "(" + to_string(c) + ")";
        } else if (c.im != 0) {
            Rational a = boost::multiprecision::abs(c.im);
            coef = (c.im < 0 ? "-" : "") + rational_to_string(a) + "i";
        } else {
            coef = rational_to_string(c.re);
        }
        std::string mono;
        auto app = [&mono](const char* v, int e) {
            if (e == 0) return;
            if (!mono.empty()) mono += "*";
            mono += v;
            if (e > 1) mono += "^" + std::to_string(e);
        };
        app("z1", mo.a);
        app("conj(z1)", mo.b);
        app("z2", mo.m);
        app("conj(z2)", mo.n);

        std::string term;
        if (mono.empty()) term = coef;
        else if (coef == "1") term = mono;
        else if (coef == "-1") term = "-" + mono;
        else term = coef + "*" + mono;

        if (first) {
            out = term;
            first = false;
        } else if (!term.empty() && term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out;
}

}  // namespace pshbump
