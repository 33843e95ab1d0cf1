#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pshbump/levi.hpp"
#include "pshbump/parse.hpp"

using namespace pshbump;
using oracles::cx;

namespace {
MixedPoly P(const std::string& s) { return parse_poly(s).poly; }
}

TEST_CASE("complex_hessian: diagonal example") {
    LeviField f = complex_hessian(P("abs2(z1)^2 + abs2(z2)^2"));
    REQUIRE(f.h11 == P("4*abs2(z1)"));
    REQUIRE(f.h22 == P("4*abs2(z2)"));
    REQUIRE(f.h12.is_zero());
    REQUIRE(f.det() == P("16*abs2(z1)*abs2(z2)"));
}

TEST_CASE("complex_hessian: rank-one example has vanishing determinant") {
    LeviField f = complex_hessian(P("abs2(z1*z2)"));
    REQUIRE(f.h11 == P("abs2(z2)"));
    REQUIRE(f.h22 == P("abs2(z1)"));
    REQUIRE(f.h12 == MixedPoly::monomial({0, 1, 1, 0}));
    REQUIRE(f.det().is_zero());
}

TEST_CASE("complex_hessian: pluriharmonic input vanishes") {
    LeviField f = complex_hessian(P("Re(z1^2)"));
    REQUIRE(f.h11.is_zero());
    REQUIRE(f.h12.is_zero());
    REQUIRE(f.h22.is_zero());
}

TEST_CASE("min_eigenvalue closed form") {
    REQUIRE(min_eigenvalue({2, 1, {0, 0}}) == 1.0);
    REQUIRE_THAT(min_eigenvalue({1, 1, {1, 0}}), Catch::Matchers::WithinAbs(0.0, 1e-15));
    // [[5, 2i], [-2i, 1]]: eigenvalues 3 +- 2*sqrt(2)
    double expect = 3.0 - 2.0 * std::sqrt(2.0);
    REQUIRE_THAT(min_eigenvalue({5, 1, {0, 2}}), Catch::Matchers::WithinRel(expect, 1e-13));
    // the det/trace quotient is a valid lower bound for PSD forms
    HermitianForm2 h{5, 1, {0, 2}};
    REQUIRE(min_eigenvalue_quotient_bound(h) <= min_eigenvalue(h) + 1e-15);
    REQUIRE(min_eigenvalue_quotient_bound(h) > 0);
}

TEST_CASE("min_eigenvalue is stable near zero") {
    // nearly singular PSD matrix: naive (tr - disc)/2 would cancel badly
    HermitianForm2 h{1.0, 1e-14, {1e-7, 0}};
    double m = min_eigenvalue(h);
    REQUIRE(m >= -1e-18);
    REQUIRE(m <= 1e-13);
}

TEST_CASE("phi family: |z1 z2|^2") {
    PhiFamily fam = phi_coefficients(P("abs2(z1*z2)"));
    REQUIRE(fam.k == 2);
    REQUIRE(fam.phi_kk() == P("16*abs2(z1)"));  // 16|zeta|^2, zeta in slot 1
    for (auto& [mn, c] : fam.entries)
        if (mn != std::make_pair(2, 2)) REQUIRE(c.is_zero());
}

TEST_CASE("phi family: |z1^2 - z2^2|^2") {
    PhiFamily fam = phi_coefficients(P("abs2(z1^2 - z2^2)"));
    REQUIRE(fam.k == 2);
    // 16|zeta^2 - 1|^2 = 16 zeta^2 conj(zeta)^2 - 16 zeta^2 - 16 conj(zeta)^2 + 16
    MixedPoly expect;
    expect.add_term({2, 2, 0, 0}, ComplexRational(Rational(16)));
    expect.add_term({2, 0, 0, 0}, ComplexRational(Rational(-16)));
    expect.add_term({0, 2, 0, 0}, ComplexRational(Rational(-16)));
    expect.add_term({0, 0, 0, 0}, ComplexRational(Rational(16)));
    REQUIRE(fam.phi_kk() == expect);
}

TEST_CASE("phi family: |z2|^4 restriction") {
    PhiFamily fam = phi_coefficients(P("abs2(z2)^2"));
    REQUIRE(fam.phi_kk() == P("16"));
}

TEST_CASE("phi_kk nonnegativity and subharmonicity for random psh inputs") {
    for (unsigned seed = 1; seed <= 6; ++seed) {
        int k = 2 + static_cast<int>(seed % 3);
        MixedPoly p = oracles::random_psh_homogeneous(seed, k);
        PhiFamily fam = phi_coefficients(p);
        const MixedPoly& pk = fam.phi_kk();

        std::mt19937_64 rng(seed * 77);
        // small-denominator rational samples keep the exact evaluation cheap
        std::uniform_int_distribution<long> u(-3 * 256, 3 * 256);
        auto sample = [&] { return make_rational(u(rng), 256); };
        for (int i = 0; i < 2000; ++i) {
            ComplexRational zeta{sample(), sample()};
            ComplexRational v = pk.evaluate_exact(zeta, ComplexRational());
            REQUIRE(v.im == 0);
            REQUIRE(v.re >= 0);
        }
        // 5-point finite-difference Laplacian, exact evaluation, small relative step
        Rational h(1, 1 << 18);
        for (int i = 0; i < 100; ++i) {
            ComplexRational zeta{sample(), sample()};
            auto at = [&](const Rational& dx, const Rational& dy) {
                return pk.evaluate_exact({zeta.re + dx, zeta.im + dy}, ComplexRational()).re;
            };
            Rational num = at(h, 0) + at(-h, 0) + at(0, h) + at(0, -h) - 4 * at(0, 0);
            double lap = to_double(Rational(num / (h * h)));
            REQUIRE(lap >= -1e-6);
        }
    }
}

TEST_CASE("hermitian assembly: h21 equals conj(h12) exactly") {
    for (unsigned seed = 0; seed < 8; ++seed) {
        MixedPoly p = oracles::random_real_poly(seed);
        LeviField f = complex_hessian(p);
        MixedPoly h21 = d_z1bar(d_z2(p));
        REQUIRE(h21 == f.h12.conj());
        REQUIRE(f.h11.is_real_valued());
        REQUIRE(f.h22.is_real_valued());
    }
}

TEST_CASE("symbolic hessian matches a numeric finite-difference oracle") {
    MixedPoly p = P("abs2(z1*z2)^4 + (15/7)*abs2(z1*z2)*Re(z1^6*z2^6)");
    LeviField f = complex_hessian(p);
    auto eval = [&](cx z1, cx z2) { return p.evaluate(z1, z2); };
    for (auto& pt : oracles::random_points(10, 42, 0.9)) {
        auto h11 = oracles::numeric_mixed_hessian(eval, pt, 0, 0, 1e-4);
        auto h12 = oracles::numeric_mixed_hessian(eval, pt, 0, 1, 1e-4);
        double scale = 1.0 + std::abs(f.h11.evaluate(pt.z1, pt.z2));
        REQUIRE_THAT(f.h11.evaluate(pt.z1, pt.z2),
                     Catch::Matchers::WithinAbs(h11.real(), 2e-5 * scale));
        cx sym = f.h12.evaluate_complex(pt.z1, pt.z2);
        REQUIRE(std::abs(sym - h12) <= 2e-5 * (1.0 + std::abs(sym)));
    }
}
