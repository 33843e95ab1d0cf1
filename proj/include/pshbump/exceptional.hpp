#pragma once

#include <algorithm>
#include <complex>
#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pshbump/interval.hpp"
#include "pshbump/levi.hpp"
#include "pshbump/parse.hpp"

namespace pshbump {

/// Certified enclosure of one exceptional line z1 = zeta*z2 (or the z2 = 0 line).
struct LineEnclosure {
    std::complex<double> center{0, 0};
    double radius = 0;
    bool at_infinity = false;
    std::optional<ComplexRational> exact;

    std::string describe() const {
        if (at_infinity) return "z2 = 0";
        if (exact) return "z1 = (" + to_string(*exact) + ") z2";
        return "z1 = (" + std::to_string(center.real()) + (center.imag() < 0 ? " - " : " + ") +
               std::to_string(std::abs(center.imag())) + "i) z2  (radius " +
               std::to_string(radius) + ")";
    }
};

struct ExceptionalSet {
    std::vector<LineEnclosure> lines;  // one entry per line (sigma = 1,1) or per curve orbit
    std::pair<int, int> sigma{1, 1};   // curve equation z1^sigma2 = zeta * z2^sigma1
    std::string orbit_note;
    double achieved_width = 0;
};

struct PshViolation : std::runtime_error {
    std::complex<double> witness;
    PshViolation(std::complex<double> w, const std::string& what)
        : std::runtime_error(what), witness(w) {}
};

/// General exact linear substitution z -> (u11 z1 + u12 z2, u21 z1 + u22 z2).
inline MixedPoly substitute_linear(const MixedPoly& p, const ComplexRational& u11,
                                   const ComplexRational& u12, const ComplexRational& u21,
                                   const ComplexRational& u22) {
    MixedPoly nz1 = u11 * MixedPoly::z1() + u12 * MixedPoly::z2();
    MixedPoly nz2 = u21 * MixedPoly::z1() + u22 * MixedPoly::z2();
    MixedPoly nz1b = nz1.conj(), nz2b = nz2.conj();
    MixedPoly r;
    for (auto& [mo, co] : p.terms()) {
        MixedPoly t = MixedPoly::constant(co);
        if (mo.a) t = t * nz1.pow(static_cast<unsigned>(mo.a));
        if (mo.b) t = t * nz1b.pow(static_cast<unsigned>(mo.b));
        if (mo.m) t = t * nz2.pow(static_cast<unsigned>(mo.m));
        if (mo.n) t = t * nz2b.pow(static_cast<unsigned>(mo.n));
        r = r + t;
    }
    return r;
}

/// p(z1, z2 + c*z1): shear in the second slot, used to move a harmonic line away
/// from the z2 = 0 chart seam.
inline MixedPoly shear_second_slot(const MixedPoly& p, const ComplexRational& c) {
    return substitute_linear(p, ComplexRational(Rational(1)), ComplexRational(), c,
                             ComplexRational(Rational(1)));
}

/// Find a rational shear z2 -> z2 + c*z1 after which the restriction to {z2 = 0}
/// is non-harmonic, so the |z1|^2k coefficient of the transformed polynomial is
/// strictly positive. Tries c = 0 first.
inline std::pair<ComplexRational, MixedPoly> normalize_coordinates(const MixedPoly& p) {
    if (!pluriharmonic_part(p).is_zero() || p.is_zero())
        throw std::invalid_argument(
            "normalize_coordinates: polynomial must be nonzero with no pluriharmonic terms");
    std::vector<ComplexRational> candidates;
    candidates.emplace_back();  // c = 0
    const long nums[] = {1, -1, 2, -2, 3, -3};
    const long dens[] = {1, 2, 3, 4};
    for (long d : dens)
        for (long n : nums) {
            candidates.push_back(ComplexRational(make_rational(n, d)));
            candidates.push_back(ComplexRational(Rational(0), make_rational(n, d)));
            candidates.push_back(ComplexRational(make_rational(n, d), make_rational(1, d)));
        }
    for (auto& c : candidates) {
        MixedPoly q = c.is_zero() ? p : shear_second_slot(p, c);
        if (!restriction_z2zero_harmonic(q)) return {c, q};
    }
    throw std::invalid_argument(
        "normalize_coordinates: no shear found; input appears harmonic along every tried line");
}

namespace detail {

struct Box {
    double x0, x1, y0, y1;
    double width() const { return x1 - x0; }
};

inline Interval iv_div(const Interval& num, const Interval& den) {
    // den must not contain zero
    double c1 = num.lo / den.lo, c2 = num.lo / den.hi, c3 = num.hi / den.lo, c4 = num.hi / den.hi;
    return Interval::widened(std::min(std::min(c1, c2), std::min(c3, c4)),
                             std::max(std::max(c1, c2), std::max(c3, c4)));
}

inline CInterval cx_div(const CInterval& a, const CInterval& b) {
    Interval n2 = b.re * b.re + b.im * b.im;
    CInterval prod = a * b.conj();
    return {iv_div(prod.re, n2), iv_div(prod.im, n2)};
}

struct Cluster {
    double x0, x1, y0, y1;
};

inline std::vector<Cluster> cluster_boxes(const std::vector<Box>& boxes) {
    std::vector<int> parent(boxes.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            parent[static_cast<std::size_t>(i)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
            i = parent[static_cast<std::size_t>(i)];
        }
        return i;
    };
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            const Box &a = boxes[i], &b = boxes[j];
            // bridge one-box speckle gaps left by rounding-limited exclusion
            double slack = 1.5 * std::min(a.width(), b.width());
            bool touch_x = a.x0 <= b.x1 + slack && b.x0 <= a.x1 + slack;
            bool touch_y = a.y0 <= b.y1 + slack && b.y0 <= a.y1 + slack;
            if (touch_x && touch_y) {
                int ra = find(static_cast<int>(i)), rb = find(static_cast<int>(j));
                if (ra != rb) parent[static_cast<std::size_t>(ra)] = rb;
            }
        }
    }
    std::map<int, Cluster> agg;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        int r = find(static_cast<int>(i));
        auto it = agg.find(r);
        if (it == agg.end()) {
            agg.emplace(r, Cluster{boxes[i].x0, boxes[i].x1, boxes[i].y0, boxes[i].y1});
        } else {
            it->second.x0 = std::min(it->second.x0, boxes[i].x0);
            it->second.x1 = std::max(it->second.x1, boxes[i].x1);
            it->second.y0 = std::min(it->second.y0, boxes[i].y0);
            it->second.y1 = std::max(it->second.y1, boxes[i].y1);
        }
    }
    std::vector<Cluster> out;
    for (auto& [r, cl] : agg) out.push_back(cl);
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
        return std::pair(a.x0, a.y0) < std::pair(b.x0, b.y0);
    });
    return out;
}

/// Small-denominator Gaussian-rational candidates inside [x0,x1]x[y0,y1] verified
/// against exact zero of every family entry.
inline std::optional<ComplexRational> exact_witness(
    const std::map<std::pair<int, int>, MixedPoly>& fam, const Cluster& cl) {
    const long dens[] = {1, 2, 3, 4, 5, 6, 7, 8, 12, 16, 24, 32, 48, 64};
    double cx = 0.5 * (cl.x0 + cl.x1), cy = 0.5 * (cl.y0 + cl.y1);
    for (long d : dens) {
        Rational x = make_rational(std::llround(cx * static_cast<double>(d)), d);
        Rational y = make_rational(std::llround(cy * static_cast<double>(d)), d);
        double xd = to_double(x), yd = to_double(y);
        if (xd < cl.x0 - 1e-15 || xd > cl.x1 + 1e-15 || yd < cl.y0 - 1e-15 ||
            yd > cl.y1 + 1e-15)
            continue;
        ComplexRational zeta{x, y};
        bool all_zero = true;
        for (auto& [mn, phi] : fam) {
            if (phi.is_zero()) continue;
            if (!phi.evaluate_exact(zeta, ComplexRational()).is_zero()) {
                all_zero = false;
                break;
            }
        }
        if (all_zero) return zeta;
    }
    return std::nullopt;
}

}  // namespace detail

struct HarmonicLinesOptions {
    double tol = 1e-9;
    std::size_t max_boxes = 4'000'000;
    double psh_tol = 1e-9;  // reject when phi_kk certified below -psh_tol * scale
};

/// Exact harmonicity of the restriction p(zeta*w, w): no mixed w-terms survive.
inline bool line_restriction_harmonic_exact(const MixedPoly& p, const ComplexRational& zeta) {
    MixedPoly r = substitute_line(p, zeta);
    for (auto& [mo, c] : r.terms())
        if (mo.m >= 1 && mo.n >= 1) return false;
    return true;
}

/// Certified enumeration of the harmonic lines of a homogeneous psh polynomial.
/// Coordinates are normalized internally; enclosures are reported in the original
/// coordinates, with the z2 = 0 line carried as at_infinity.
inline ExceptionalSet harmonic_lines(const MixedPoly& p, double tol = 1e-9,
                                     const HarmonicLinesOptions& base_opts = {}) {
    HarmonicLinesOptions opts = base_opts;
    opts.tol = tol;

    auto [c_shear, q] = normalize_coordinates(p);
    PhiFamily fam = phi_coefficients(q);
    const MixedPoly& pkk = fam.phi_kk();

    // Root bound from the positive leading coefficient of phi_kk: the top-degree
    // part is exactly lead * |zeta|^2k, so zeros satisfy
    // lead * r^2k <= sum_d S_d r^d with S_d the lower-degree coefficient sums.
    ComplexRational lead = pkk.coeff({fam.k, fam.k, 0, 0});
    if (!(lead.im == 0) || !(lead.re > 0))
        throw std::logic_error("harmonic_lines: normalization failed to produce a positive "
                               "leading coefficient");
    double lead_d = to_double(lead.re);
    const int top_deg = 2 * fam.k;
    std::vector<double> degree_sums(static_cast<std::size_t>(top_deg) + 1, 0.0);
    for (auto& [mo, c] : pkk.terms())
        if (!(mo.a == fam.k && mo.b == fam.k))
            degree_sums[static_cast<std::size_t>(mo.a + mo.b)] += std::abs(c.to_complex());
    double R = 1.0;
    for (int d = 0; d < top_deg; ++d) {
        double s = degree_sums[static_cast<std::size_t>(d)];
        if (s > 0)
            R = std::max(R, 1.0 + 2.0 * std::pow(s / lead_d, 1.0 / (top_deg - d)));
    }

    std::vector<ZetaIntervalPoly> phis;
    std::vector<const MixedPoly*> phi_polys;
    for (auto& [mn, phi] : fam.entries) {
        if (phi.is_zero()) continue;
        phis.emplace_back(phi);
        phi_polys.push_back(&phi);
    }
    ZetaIntervalPoly pkk_iv(pkk);
    double scale = pkk.coeff_scale() * std::max(1.0, std::pow(R, 2.0 * fam.k));

    std::deque<detail::Box> queue{{-R, R, -R, R}};
    std::vector<detail::Box> survivors;
    std::size_t processed = 0;
    std::size_t hot_phi = 0;  // the entry that excluded the previous box, tried first
    double achieved = 0;
    while (!queue.empty()) {
        if (++processed > opts.max_boxes)
            throw std::runtime_error("harmonic_lines: subdivision budget exhausted");
        detail::Box b = queue.front();
        queue.pop_front();
        Interval x(b.x0, b.x1), y(b.y0, b.y1);

        // polar magnitude pretest: lead * rmin^2k dominating all lower-degree terms
        // excludes wide outer boxes that defeat rectangle interval forms
        {
            double ax = std::max({0.0, b.x0, -b.x1}), ay = std::max({0.0, b.y0, -b.y1});
            double rmin = std::hypot(ax, ay);
            double rmax = std::hypot(std::max(std::abs(b.x0), std::abs(b.x1)),
                                     std::max(std::abs(b.y0), std::abs(b.y1)));
            if (rmin > 0) {
                double low = lead_d * std::pow(rmin, top_deg);
                for (int d = 0; d < top_deg; ++d)
                    low -= degree_sums[static_cast<std::size_t>(d)] * std::pow(rmax, d);
                if (low > 0) continue;
            }
        }

        CInterval vkk = pkk_iv.eval(x, y);
        if (vkk.re.hi < -opts.psh_tol * scale) {
            throw PshViolation({0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1)},
                               "harmonic_lines: phi_kk certified negative; input is not psh");
        }
        bool excluded = !vkk.contains_zero();
        if (!excluded) {
            for (std::size_t t = 0; t < phis.size() && !excluded; ++t) {
                std::size_t idx = (hot_phi + t) % phis.size();
                if (!phis[idx].eval(x, y).contains_zero()) {
                    excluded = true;
                    hot_phi = idx;
                }
            }
        }
        if (excluded) continue;
        bool accept = b.width() <= opts.tol;
        if (!accept && b.width() <= 1e-3 * R) {
            // Subdivision stalls once the box enclosure width is dominated by the
            // evaluation rounding floor; accept and report the achieved width.
            double cxm = 0.5 * (b.x0 + b.x1), cym = 0.5 * (b.y0 + b.y1);
            CInterval pt = pkk_iv.eval(Interval(cxm), Interval(cym));
            double floor_w = pt.re.width();
            if (vkk.re.width() <= 8.0 * floor_w) accept = true;
        }
        if (accept) {
            survivors.push_back(b);
            achieved = std::max(achieved, b.width());
            continue;
        }
        double mx = 0.5 * (b.x0 + b.x1), my = 0.5 * (b.y0 + b.y1);
        queue.push_back({b.x0, mx, b.y0, my});
        queue.push_back({mx, b.x1, b.y0, my});
        queue.push_back({b.x0, mx, my, b.y1});
        queue.push_back({mx, b.x1, my, b.y1});
    }

    auto clusters = detail::cluster_boxes(survivors);

    ExceptionalSet out;
    out.achieved_width = achieved;
    bool z2_line_harmonic = restriction_z2zero_harmonic(p);
    bool infinity_seen = false;

    // Attach exact witnesses, then merge clusters that resolved to the same witness
    // (rounding-limited speckle around one zero can fragment into several clusters).
    std::vector<std::optional<ComplexRational>> witnesses(clusters.size());
    for (std::size_t i = 0; i < clusters.size(); ++i)
        witnesses[i] = detail::exact_witness(fam.entries, clusters[i]);
    std::vector<detail::Cluster> merged;
    std::vector<std::optional<ComplexRational>> merged_wit;
    std::vector<bool> used(clusters.size(), false);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (used[i]) continue;
        detail::Cluster cl = clusters[i];
        for (std::size_t j = i + 1; j < clusters.size(); ++j) {
            if (used[j] || !witnesses[i] || !witnesses[j] || !(*witnesses[i] == *witnesses[j]))
                continue;
            used[j] = true;
            cl.x0 = std::min(cl.x0, clusters[j].x0);
            cl.x1 = std::max(cl.x1, clusters[j].x1);
            cl.y0 = std::min(cl.y0, clusters[j].y0);
            cl.y1 = std::max(cl.y1, clusters[j].y1);
        }
        merged.push_back(cl);
        merged_wit.push_back(witnesses[i]);
    }
    clusters = merged;

    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
        auto& cl = clusters[ci];
        // verify the hull against every family entry
        Interval hx(cl.x0, cl.x1), hy(cl.y0, cl.y1);
        for (auto& ph : phis) {
            if (!ph.eval(hx, hy).contains_zero())
                throw std::logic_error("harmonic_lines: enclosure failed re-verification");
        }
        const auto& exact_in_chart = merged_wit[ci];
        if (exact_in_chart) {
            // collapse the enclosure around the verified witness
            double wx = to_double(exact_in_chart->re), wy = to_double(exact_in_chart->im);
            double r = 0.25 * opts.tol;
            cl = detail::Cluster{wx - r, wx + r, wy - r, wy + r};
        }

        // map back through z2 -> z2 + c*z1: zeta_orig = zeta' / (1 + c*zeta')
        if (c_shear.is_zero()) {
            LineEnclosure e;
            e.center = {0.5 * (cl.x0 + cl.x1), 0.5 * (cl.y0 + cl.y1)};
            e.radius = 0.5 * std::hypot(cl.x1 - cl.x0, cl.y1 - cl.y0) + opts.tol * 1e-3;
            e.exact = exact_in_chart;
            out.lines.push_back(e);
            continue;
        }
        CInterval zb{hx, hy};
        CInterval den = CInterval{Interval(1.0), Interval(0.0)} +
                        CInterval{Interval::from_rational(c_shear.re),
                                  Interval::from_rational(c_shear.im)} *
                            zb;
        if (den.contains_zero()) {
            // the enclosure sits on the original chart seam
            if (exact_in_chart) {
                ComplexRational w = *exact_in_chart;
                ComplexRational d = ComplexRational(Rational(1)) + c_shear * w;
                if (d.is_zero()) {
                    if (!z2_line_harmonic)
                        throw std::logic_error("harmonic_lines: chart disagreement at infinity");
                    LineEnclosure e;
                    e.at_infinity = true;
                    e.exact = ComplexRational();
                    out.lines.push_back(e);
                    infinity_seen = true;
                    continue;
                }
            }
            throw std::runtime_error(
                "harmonic_lines: enclosure straddles the chart seam; retry with smaller tol");
        }
        CInterval img = detail::cx_div(zb, den);
        LineEnclosure e;
        e.center = {0.5 * (img.re.lo + img.re.hi), 0.5 * (img.im.lo + img.im.hi)};
        e.radius = 0.5 * std::hypot(img.re.hi - img.re.lo, img.im.hi - img.im.lo) + opts.tol * 1e-3;
        if (exact_in_chart) {
            ComplexRational d = ComplexRational(Rational(1)) + c_shear * *exact_in_chart;
            e.exact = *exact_in_chart / d;
        }
        out.lines.push_back(e);
    }

    if (z2_line_harmonic && !infinity_seen) {
        // possible only when the shear was zero (seam line untouched by the search)
        LineEnclosure e;
        e.at_infinity = true;
        e.exact = ComplexRational();
        out.lines.push_back(e);
    }
    return out;
}

inline long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

/// Exceptional curves z1^sigma2 = zeta * z2^sigma1 of a weighted-homogeneous psh
/// polynomial, obtained from the harmonic lines of the homogenized pullback and
/// grouped into root-of-unity orbits.
inline ExceptionalSet harmonic_curves(const MixedPoly& p, long m1, long m2, double tol = 1e-9) {
    if (m1 <= 0 || m2 <= 0) throw std::invalid_argument("harmonic_curves: weights must be positive");
    long K = lcm_long(m1, m2);
    int s1 = static_cast<int>(K / m1), s2 = static_cast<int>(K / m2);
    MixedPoly q = substitute_power(p, s1, s2);

    ExceptionalSet lines = harmonic_lines(q, tol);
    long orbit = static_cast<long>(s1) * s2;

    ExceptionalSet out;
    out.sigma = {s1, s2};
    out.achieved_width = lines.achieved_width;
    out.orbit_note = "lines of the pullback grouped by zeta -> zeta^" + std::to_string(orbit);

    std::vector<LineEnclosure> pending;
    for (auto& e : lines.lines) {
        if (e.at_infinity) {
            out.lines.push_back(e);
            continue;
        }
        if (e.exact && e.exact->is_zero()) {
            out.lines.push_back(e);  // the z1 = 0 curve, a singleton orbit
            continue;
        }
        pending.push_back(e);
    }
    // group the remaining lines by zeta^orbit
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::complex<double>> reps;
    for (std::size_t i = 0; i < pending.size(); ++i) {
        std::complex<double> zc = std::pow(pending[i].center, static_cast<double>(orbit));
        bool placed = false;
        for (std::size_t g = 0; g < reps.size(); ++g) {
            double sep = std::abs(zc - reps[g]);
            double tolr = 1e-4 * (1.0 + std::abs(zc));
            if (sep <= tolr) {
                groups[g].push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({i});
            reps.push_back(zc);
        }
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (static_cast<long>(groups[g].size()) != orbit)
            throw std::runtime_error(
                "harmonic_curves: orbit grouping failed (enclosures too coarse); retry with "
                "smaller tol");
        LineEnclosure e;
        e.center = reps[g];
        double r = 0;
        for (auto idx : groups[g]) {
            const auto& le = pending[idx];
            double derivative = static_cast<double>(orbit) *
                                std::pow(std::abs(le.center) + le.radius,
                                         static_cast<double>(orbit - 1));
            r = std::max(r, derivative * le.radius * 1.1);
        }
        e.radius = r;
        for (auto idx : groups[g]) {
            if (pending[idx].exact) {
                e.exact = pending[idx].exact->pow(static_cast<unsigned>(orbit));
                break;
            }
        }
        out.lines.push_back(e);
    }
    std::sort(out.lines.begin(), out.lines.end(), [](const LineEnclosure& a, const LineEnclosure& b) {
        if (a.at_infinity != b.at_infinity) return b.at_infinity;
        return std::pair(a.center.real(), a.center.imag()) <
               std::pair(b.center.real(), b.center.imag());
    });
    return out;
}

}  // namespace pshbump
