#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <utility>

#include "pshbump/poly_ops.hpp"

namespace pshbump {

/// The four second Wirtinger derivatives of a real-valued polynomial.
/// h21 is conj(h12) by the reality invariant and is not stored.
struct LeviField {
    MixedPoly h11, h12, h22;

    MixedPoly trace() const { return h11 + h22; }
    MixedPoly det() const { return h11 * h22 - h12 * h12.conj(); }
};

inline LeviField complex_hessian(const MixedPoly& p) {
    LeviField f;
    f.h11 = d_z1bar(d_z1(p));
    f.h12 = d_z2bar(d_z1(p));
    f.h22 = d_z2bar(d_z2(p));
    return f;
}

/// Pointwise 2x2 Hermitian form [[h11, h12], [conj(h12), h22]].
struct HermitianForm2 {
    double h11 = 0, h22 = 0;
    std::complex<double> h12{0, 0};

    double trace() const { return h11 + h22; }
    double det() const { return h11 * h22 - std::norm(h12); }
};

/// Least eigenvalue via the stable branch: larger-magnitude root from the quadratic
/// formula, the other recovered as det/larger.
inline double min_eigenvalue(const HermitianForm2& h) {
    double tr = h.trace();
    double diff = h.h11 - h.h22;
    double disc = std::sqrt(diff * diff + 4.0 * std::norm(h.h12));
    double big = (tr >= 0) ? 0.5 * (tr + disc) : 0.5 * (tr - disc);
    if (big == 0.0) return 0.0;  // zero matrix
    double other = h.det() / big;
    return std::min(big, other);
}

/// det / trace: a lower bound for the least eigenvalue of a PSD form
/// (trace >= largest eigenvalue >= 0). Zero-trace forms return 0.
inline double min_eigenvalue_quotient_bound(const HermitianForm2& h) {
    double tr = h.trace();
    if (tr <= 0) return 0.0;
    return h.det() / tr;
}

inline HermitianForm2 eval_levi(const LeviField& f, std::complex<double> z1,
                                std::complex<double> z2) {
    HermitianForm2 h;
    h.h11 = f.h11.evaluate(z1, z2);
    h.h22 = f.h22.evaluate(z1, z2);
    h.h12 = f.h12.evaluate_complex(z1, z2);
    return h;
}

/// The coefficient family phi_mn(zeta) of the restricted Laplacian:
/// with p(zeta*w, w) = sum_{m+n=2k} c_mn(zeta) w^m conj(w)^n and lap = 4 d/dw d/dwbar,
/// phi_mn = 4*m*n*c_mn for m, n >= 1. The line L^zeta is harmonic iff all entries
/// vanish at zeta. Entries with m = 0 or n = 0 are annihilated by the Laplacian and
/// are excluded.
struct PhiFamily {
    int k = 0;  // homogeneity degree is 2k
    std::map<std::pair<int, int>, MixedPoly> entries;  // polynomials in (zeta, conj(zeta))

    const MixedPoly& phi_kk() const {
        auto it = entries.find({k, k});
        if (it == entries.end()) throw std::logic_error("phi_kk missing");
        return it->second;
    }
};

inline PhiFamily phi_coefficients(const MixedPoly& p) {
    int deg = p.total_degree();
    auto r = check_homogeneous(p, Rational(deg), Rational(deg));
    if (!r || *r != 1 || deg % 2 != 0)
        throw std::invalid_argument("phi_coefficients: polynomial must be homogeneous of even degree");
    PhiFamily fam;
    fam.k = deg / 2;
    for (auto& [mn, c] : line_coefficients(p)) {
        auto [m, n] = mn;
        if (m < 1 || n < 1) continue;
        fam.entries[mn] = Rational(4L * m * n) * c;
    }
    // phi_kk is always present as a (possibly zero) entry so callers can anchor on it.
    fam.entries.try_emplace({fam.k, fam.k});
    return fam;
}

}  // namespace pshbump
