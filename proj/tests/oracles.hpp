#pragma once

// Test-only oracles, independent of the symbolic implementation paths they check:
// direct numeric evaluation of the defining expressions, finite differences,
// quadrature on circles, and deterministic random generators.

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "pshbump/mixed_poly.hpp"
#include "pshbump/poly_ops.hpp"

namespace oracles {

using cx = std::complex<double>;

inline double abs2(cx z) { return std::norm(z); }

/// Kohn-Nirenberg model evaluated directly from its defining expression.
inline double kn_G(cx z) {
    return std::pow(std::abs(z), 8.0) + (15.0 / 7.0) * std::norm(z) * std::real(std::pow(z, 6));
}

struct Pt {
    cx z1, z2;
};

inline std::vector<Pt> random_points(std::size_t count, unsigned seed, double scale = 1.5) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<Pt> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        pts.push_back({cx(u(rng), u(rng)), cx(u(rng), u(rng))});
    return pts;
}

/// Random real-valued polynomial: random terms plus their conjugate mirrors.
inline pshbump::MixedPoly random_real_poly(unsigned seed, int max_half_degree = 4,
                                           int term_count = 6) {
    using namespace pshbump;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> de(0, max_half_degree);
    std::uniform_int_distribution<int> co(-3, 3);
    MixedPoly p;
    for (int t = 0; t < term_count; ++t) {
        Monomial mo{de(rng), de(rng), de(rng), de(rng)};
        ComplexRational c{Rational(co(rng)), Rational(co(rng))};
        if (c.is_zero()) continue;
        p.add_term(mo, c);
        p.add_term(mo.conj(), c.conj());
    }
    return p;
}

/// Random holomorphic homogeneous polynomial of degree d with small integer coefficients.
inline pshbump::MixedPoly random_holo_homogeneous(std::mt19937_64& rng, int d) {
    using namespace pshbump;
    std::uniform_int_distribution<int> co(-2, 2);
    MixedPoly f;
    for (int a = 0; a <= d; ++a) {
        ComplexRational c{Rational(co(rng)), Rational(co(rng))};
        if (c.is_zero()) continue;
        f.add_term({a, 0, d - a, 0}, c);
    }
    if (f.is_zero()) f.add_term({d, 0, 0, 0}, ComplexRational(Rational(1)));
    return f;
}

/// Random psh homogeneous polynomial of degree 2k: a sum of |holomorphic|^2 pieces.
/// psh by construction (each |f|^2 has PSD complex Hessian).
inline pshbump::MixedPoly random_psh_homogeneous(unsigned seed, int k, int pieces = 2) {
    using namespace pshbump;
    std::mt19937_64 rng(seed);
    MixedPoly p;
    for (int i = 0; i < pieces; ++i) {
        MixedPoly f = random_holo_homogeneous(rng, k);
        p = p + f * f.conj();
    }
    return p;
}

/// Central-difference Wirtinger Hessian entry d^2 f / dz_i dzbar_j of a numeric function,
/// for cross-checks against the symbolic machinery.
///   d/dz = (d/dx - i d/dy)/2,  d/dzbar = (d/dx + i d/dy)/2
inline cx numeric_mixed_hessian(const std::function<double(cx, cx)>& f, Pt p, int i, int j,
                                double h) {
    auto shift = [&](Pt q, int var, int comp, double d) {
        cx delta = (comp == 0) ? cx(d, 0) : cx(0, d);
        if (var == 0) q.z1 += delta; else q.z2 += delta;
        return q;
    };
    auto d2 = [&](int ci, int cj) {  // d^2 f / d(comp ci of var i) d(comp cj of var j)
        if (i == j && ci == cj) {
            Pt up = shift(p, i, ci, h), dn = shift(p, i, ci, -h);
            return (f(up.z1, up.z2) - 2.0 * f(p.z1, p.z2) + f(dn.z1, dn.z2)) / (h * h);
        }
        Pt pp = shift(shift(p, i, ci, h), j, cj, h);
        Pt pm = shift(shift(p, i, ci, h), j, cj, -h);
        Pt mp = shift(shift(p, i, ci, -h), j, cj, h);
        Pt mm = shift(shift(p, i, ci, -h), j, cj, -h);
        return (f(pp.z1, pp.z2) - f(pm.z1, pm.z2) - f(mp.z1, mp.z2) + f(mm.z1, mm.z2)) /
               (4.0 * h * h);
    };
    double fxx = d2(0, 0), fyy = d2(1, 1), fxy = d2(0, 1), fyx = d2(1, 0);
    return 0.25 * cx(fxx + fyy, fxy - fyx);
}

}  // namespace oracles
