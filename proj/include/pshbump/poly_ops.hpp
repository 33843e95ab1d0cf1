#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>

#include "pshbump/mixed_poly.hpp"

namespace pshbump {

enum class Var { z1, z2 };
enum class DerivKind { holomorphic, antiholomorphic };

/// Formal Wirtinger derivative: d/dz1 of z1^a conj(z1)^b ... is a * z1^(a-1) ...
inline MixedPoly wirtinger(const MixedPoly& p, Var v, DerivKind k) {
    MixedPoly r;
    for (auto& [mo, c] : p.terms()) {
        Monomial d = mo;
        int* e = nullptr;
        if (v == Var::z1) e = (k == DerivKind::holomorphic) ? &d.a : &d.b;
        else e = (k == DerivKind::holomorphic) ? &d.m : &d.n;
        if (*e == 0) continue;
        Rational mult(*e);
        *e -= 1;
        r.add_term(d, mult * c);
    }
    return r;
}

inline MixedPoly d_z1(const MixedPoly& p) { return wirtinger(p, Var::z1, DerivKind::holomorphic); }
inline MixedPoly d_z1bar(const MixedPoly& p) { return wirtinger(p, Var::z1, DerivKind::antiholomorphic); }
inline MixedPoly d_z2(const MixedPoly& p) { return wirtinger(p, Var::z2, DerivKind::holomorphic); }
inline MixedPoly d_z2bar(const MixedPoly& p) { return wirtinger(p, Var::z2, DerivKind::antiholomorphic); }

/// Swap z1 <-> z2.
inline MixedPoly substitute_swap(const MixedPoly& p) {
    MixedPoly::TermMap t;
    for (auto& [mo, c] : p.terms()) t[{mo.m, mo.n, mo.a, mo.b}] = c;
    return MixedPoly(std::move(t));
}

/// p(z1 + c*z2, z2), exact binomial expansion.
inline MixedPoly substitute_shear(const MixedPoly& p, const ComplexRational& c) {
    MixedPoly nz1 = MixedPoly::z1() + c * MixedPoly::z2();
    MixedPoly nz1b = MixedPoly::z1bar() + c.conj() * MixedPoly::z2bar();
    MixedPoly r;
    for (auto& [mo, co] : p.terms()) {
        MixedPoly t = MixedPoly::constant(co);
        t = t * nz1.pow(static_cast<unsigned>(mo.a));
        t = t * nz1b.pow(static_cast<unsigned>(mo.b));
        t = t * MixedPoly::monomial({0, 0, mo.m, mo.n});
        r = r + t;
    }
    return r;
}

/// p(z1^s1, z2^s2).
inline MixedPoly substitute_power(const MixedPoly& p, int s1, int s2) {
    if (s1 <= 0 || s2 <= 0) throw std::invalid_argument("powers must be positive");
    MixedPoly::TermMap t;
    for (auto& [mo, c] : p.terms())
        t[{mo.a * s1, mo.b * s1, mo.m * s2, mo.n * s2}] = c;
    return MixedPoly(std::move(t));
}

/// Restriction p(zeta*w, w) for an exact Gaussian-rational zeta; the result lives in the
/// z2 slot (w = z2).
inline MixedPoly substitute_line(const MixedPoly& p, const ComplexRational& zeta) {
    MixedPoly r;
    ComplexRational zb = zeta.conj();
    for (auto& [mo, c] : p.terms()) {
        ComplexRational coef = c * zeta.pow(static_cast<unsigned>(mo.a)) * zb.pow(static_cast<unsigned>(mo.b));
        r.add_term({0, 0, mo.a + mo.m, mo.b + mo.n}, coef);
    }
    return r;
}

/// Formal line substitution: p(zeta*w, w) = sum c_{mn}(zeta) w^m conj(w)^n.
/// Each c_{mn} is a polynomial in (zeta, conj(zeta)) stored in the z1 slot.
inline std::map<std::pair<int, int>, MixedPoly> line_coefficients(const MixedPoly& p) {
    std::map<std::pair<int, int>, MixedPoly> fam;
    for (auto& [mo, c] : p.terms()) {
        fam[{mo.a + mo.m, mo.b + mo.n}].add_term({mo.a, mo.b, 0, 0}, c);
    }
    return fam;
}

/// Terms with (b = n = 0) or (a = m = 0); the constant is counted once.
inline MixedPoly pluriharmonic_part(const MixedPoly& p) {
    MixedPoly r;
    for (auto& [mo, c] : p.terms()) {
        if ((mo.b == 0 && mo.n == 0) || (mo.a == 0 && mo.m == 0)) r.add_term(mo, c);
    }
    return r;
}

/// U(F, conj(F)) for a one-variable U (z1 slot only) and holomorphic F.
inline MixedPoly compose(const MixedPoly& u, const MixedPoly& f) {
    if (!f.is_holomorphic()) throw std::invalid_argument("compose: F must be holomorphic");
    for (auto& [mo, c] : u.terms())
        if (mo.m != 0 || mo.n != 0)
            throw std::invalid_argument("compose: U must use only the first variable slot");
    MixedPoly fb = f.conj();
    // Cache powers of F and conj(F).
    int da = 0, db = 0;
    for (auto& [mo, c] : u.terms()) {
        da = std::max(da, mo.a);
        db = std::max(db, mo.b);
    }
    std::vector<MixedPoly> fp(static_cast<std::size_t>(da) + 1), fbp(static_cast<std::size_t>(db) + 1);
    fp[0] = MixedPoly::constant(ComplexRational(Rational(1)));
    for (int i = 1; i <= da; ++i) fp[static_cast<std::size_t>(i)] = fp[static_cast<std::size_t>(i - 1)] * f;
    fbp[0] = MixedPoly::constant(ComplexRational(Rational(1)));
    for (int i = 1; i <= db; ++i) fbp[static_cast<std::size_t>(i)] = fbp[static_cast<std::size_t>(i - 1)] * fb;
    MixedPoly r;
    for (auto& [mo, c] : u.terms())
        r = r + c * (fp[static_cast<std::size_t>(mo.a)] * fbp[static_cast<std::size_t>(mo.b)]);
    return r;
}

/// Weight of each monomial under (m1, m2): (a+b)/m1 + (m+n)/m2. Returns the common
/// weight r when all monomials agree, absent otherwise.
inline std::optional<Rational> check_homogeneous(const MixedPoly& p, const Rational& m1,
                                                 const Rational& m2) {
    if (p.is_zero()) return std::nullopt;
    std::optional<Rational> r;
    for (auto& [mo, c] : p.terms()) {
        Rational w = Rational(mo.degree_z1()) / m1 + Rational(mo.degree_z2()) / m2;
        if (!r) r = w;
        else if (*r != w) return std::nullopt;
    }
    return r;
}

/// Infer (m1, m2) with weight exactly 1 from the monomial bidegrees; unique solution
/// requires two independent bidegrees (or a pure power in each variable).
inline std::optional<std::pair<Rational, Rational>> infer_weights(const MixedPoly& p) {
    // Distinct (d1, d2) bidegrees give linear equations d1*u + d2*v = 1 in u = 1/m1, v = 1/m2.
    std::vector<std::pair<int, int>> degs;
    for (auto& [mo, c] : p.terms()) {
        std::pair<int, int> d{mo.degree_z1(), mo.degree_z2()};
        bool seen = false;
        for (auto& e : degs) seen |= (e == d);
        if (!seen) degs.push_back(d);
    }
    for (std::size_t i = 0; i < degs.size(); ++i) {
        for (std::size_t j = i + 1; j < degs.size(); ++j) {
            long a1 = degs[i].first, a2 = degs[i].second;
            long b1 = degs[j].first, b2 = degs[j].second;
            long det = a1 * b2 - a2 * b1;
            if (det == 0) continue;
            Rational u = make_rational(b2 - a2, det);
            Rational v = make_rational(a1 - b1, det);
            if (u <= 0 || v <= 0) continue;
            Rational m1 = 1 / u, m2 = 1 / v;
            if (check_homogeneous(p, m1, m2) == Rational(1)) return std::make_pair(m1, m2);
        }
    }
    // Single bidegree class: homogeneous in the ordinary sense only if one variable is absent
    // from the degree balance; ambiguous otherwise.
    if (degs.size() == 1) {
        auto [d1, d2] = degs[0];
        if (d1 > 0 && d2 == 0) return std::make_pair(Rational(d1), Rational(d1));
        if (d1 == 0 && d2 > 0) return std::make_pair(Rational(d2), Rational(d2));
        if (d1 > 0 && d2 > 0 && d1 == d2) {
            // e.g. |z1 z2|^2k: infer the symmetric choice
            return std::make_pair(Rational(d1 + d2), Rational(d1 + d2));
        }
    }
    return std::nullopt;
}

/// One-variable restriction p(z1, 0); harmonic iff no mixed (a>=1 and b>=1) term survives.
inline bool restriction_z2zero_harmonic(const MixedPoly& p) {
    for (auto& [mo, c] : p.terms()) {
        if (mo.m != 0 || mo.n != 0) continue;
        if (mo.a >= 1 && mo.b >= 1) return false;
    }
    return true;
}

/// Laplacian with the fixed convention  lap = 4 * d/dz d/dzbar  in the z1 slot.
inline MixedPoly laplacian_z1(const MixedPoly& p) {
    return Rational(4) * d_z1bar(d_z1(p));
}

}  // namespace pshbump
