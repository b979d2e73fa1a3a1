#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "gsieve/common.hpp"
#include "gsieve/gaussint.hpp"
#include "gsieve/moduli.hpp"

namespace gsieve {

struct FareyNode {
    GaussInt a;
    GaussInt q;
    std::complex<double> point;  // a / q
};

// All reduced fractions a/q with q in S and a a divrem-reduced reduced
// residue mod q. Node count is sum of phi(q).
inline std::vector<FareyNode> enumerate_farey(const ModuliSet& s,
                                              std::int64_t node_cap = 4'000'000) {
    std::vector<FareyNode> out;
    for (GaussInt q : s.elements) {
        ResidueSystem rs = residue_system(q);
        for (std::size_t i = 0; i < rs.representatives.size(); ++i) {
            if (!rs.reduced_mask[i]) continue;
            GaussInt a = rs.representatives[i];
            out.push_back({a, q, to_complex(a) / to_complex(q)});
            if (static_cast<std::int64_t>(out.size()) > node_cap)
                throw budget_error("enumerate_farey: node cap exceeded");
        }
    }
    return out;
}

struct Approximant {
    GaussInt b;
    GaussInt r;
    std::complex<double> z;  // alpha - b/r
    double tau = 0;
};

namespace detail {

inline GaussInt nearest_gauss(std::complex<double> z) {
    return {static_cast<std::int64_t>(std::llround(z.real())),
            static_cast<std::int64_t>(std::llround(z.imag()))};
}

// Canonical r with 0 < |r| <= tau, sorted by (norm, re, im).
inline std::vector<GaussInt> approx_denominators(double tau) {
    std::int64_t cap = static_cast<std::int64_t>(tau * tau + 1e-9);
    std::vector<GaussInt> rs;
    for (std::int64_t re = 1; re * re <= cap; ++re)
        for (std::int64_t im = 0; re * re + im * im <= cap; ++im)
            rs.push_back({re, im});
    std::sort(rs.begin(), rs.end(), [](GaussInt a, GaussInt b) {
        return std::tuple(norm(a), a.re, a.im) < std::tuple(norm(b), b.re, b.im);
    });
    return rs;
}

}  // namespace detail

// Dirichlet approximation in C: alpha = b/r + z with (b,r)=1, 0 < |r| <= tau,
// |z| < 2/(|r| tau). Deterministic: exhaustive search over canonical r in
// increasing (norm, re, im) order; first witness wins.
inline Approximant dirichlet_approx(std::complex<double> alpha, double tau) {
    if (tau < 1.0) throw std::invalid_argument("dirichlet_approx: tau must be >= 1");
    for (GaussInt r : detail::approx_denominators(tau)) {
        GaussInt b = detail::nearest_gauss(to_complex(r) * alpha);
        double abs_r = std::sqrt(static_cast<double>(norm(r)));
        std::complex<double> z = alpha - to_complex(b) / to_complex(r);
        if (std::abs(z) < 2.0 / (abs_r * tau)) {
            if (!(is_zero(b) && is_zero(r))) {
                GaussInt d = gcd(b, r);
                b = div_exact(b, d);
                r = div_exact(r, d);
            }
            return {b, r, alpha - to_complex(b) / to_complex(r), tau};
        }
    }
    throw std::logic_error("dirichlet_approx: no witness found");
}

// Local node count P(alpha): number of pairs (a, q), q in S (multiset), a over
// all of Z[i] with (a,q)=1 and |a/q - alpha| <= sqrt(Delta).
inline std::int64_t count_P(std::complex<double> alpha, double delta, const ModuliSet& s) {
    if (!(delta > 0 && delta <= 0.5))
        throw std::invalid_argument("count_P: Delta must lie in (0, 1/2]");
    double rad = std::sqrt(delta);
    std::int64_t total = 0;
    for (GaussInt q : s.elements) {
        std::complex<double> c = to_complex(q) * alpha;
        double R = std::sqrt(static_cast<double>(norm(q))) * rad;
        double tol = R * (1 + 1e-12) + 1e-12;
        std::int64_t lo_re = static_cast<std::int64_t>(std::floor(c.real() - R - 1));
        std::int64_t hi_re = static_cast<std::int64_t>(std::ceil(c.real() + R + 1));
        std::int64_t lo_im = static_cast<std::int64_t>(std::floor(c.imag() - R - 1));
        std::int64_t hi_im = static_cast<std::int64_t>(std::ceil(c.imag() + R + 1));
        for (std::int64_t re = lo_re; re <= hi_re; ++re)
            for (std::int64_t im = lo_im; im <= hi_im; ++im) {
                GaussInt a{re, im};
                if (std::abs(to_complex(a) - c) > tol) continue;
                bool cop = is_zero(a) ? is_unit(q) : coprime(a, q);
                if (cop) ++total;
            }
    }
    return total;
}

struct KResult {
    int count = 0;
    std::array<double, 2> center{0, 0};  // an attaining center
};

namespace detail {

inline double frac01(double x) {
    double f = x - std::floor(x);
    return (f >= 1.0) ? 0.0 : f;
}

inline double torus_dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    double s = 0;
    for (int j = 0; j < 2; ++j) {
        double d = std::fabs(a[j] - b[j]);
        d -= std::floor(d);
        d = std::min(d, 1.0 - d);
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace detail

// K(Delta): sup over alpha of the number of points within toroidal distance
// sqrt(Delta). Points are unfolded into 3x3 translate copies and the same
// candidate-center argument as count_A_t applies.
inline KResult count_K_detail(double delta, const std::vector<std::array<double, 2>>& points) {
    if (!(delta > 0 && delta <= 0.5))
        throw std::invalid_argument("count_K: Delta must lie in (0, 1/2]");
    double u = std::sqrt(delta);
    const double eps = 1e-9 * (1.0 + u);

    std::vector<std::array<double, 2>> reduced;
    reduced.reserve(points.size());
    for (auto p : points) reduced.push_back({detail::frac01(p[0]), detail::frac01(p[1])});

    std::vector<std::array<double, 2>> unfolded;
    unfolded.reserve(9 * reduced.size());
    for (auto p : reduced)
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                unfolded.push_back({p[0] + dx, p[1] + dy});

    std::vector<std::array<double, 2>> centers(reduced);
    for (std::size_t i = 0; i < unfolded.size(); ++i)
        for (std::size_t j = i + 1; j < unfolded.size(); ++j) {
            double dx = unfolded[j][0] - unfolded[i][0];
            double dy = unfolded[j][1] - unfolded[i][1];
            double dist = std::hypot(dx, dy);
            if (dist > 2 * u + eps || dist == 0.0) continue;
            double mx = 0.5 * (unfolded[i][0] + unfolded[j][0]);
            double my = 0.5 * (unfolded[i][1] + unfolded[j][1]);
            double h2 = u * u - 0.25 * dist * dist;
            double h = h2 > 0 ? std::sqrt(h2) : 0.0;
            double px = -dy / dist * h, py = dx / dist * h;
            centers.push_back({mx + px, my + py});
            centers.push_back({mx - px, my - py});
        }

    KResult best;
    for (auto c : centers) {
        int cnt = 0;
        for (auto p : reduced)
            if (detail::torus_dist(p, c) <= u + eps) ++cnt;
        if (cnt > best.count) best = {cnt, c};
    }
    return best;
}

inline int count_K(double delta, const std::vector<std::array<double, 2>>& points) {
    return count_K_detail(delta, points).count;
}

// R^2 coordinates of a Farey node: conj(a)/conj(q) as a point of the plane.
inline std::array<double, 2> node_r2_coords(const FareyNode& n) {
    std::complex<double> w = to_complex(conj(n.a)) / to_complex(conj(n.q));
    return {w.real(), w.imag()};
}

struct Lemma1Report {
    int K = 0;
    Approximant approx;
    bool shifted = false;            // true when |z| < sqrt(Delta)
    std::vector<std::int64_t> P;     // P at the evaluation points
    std::int64_t bound = 0;          // 4 * max P
    bool holds = false;
};

// Empirical check of the K <= 4 sup P reduction: approximate the K-attaining
// center by Dirichlet approximation and compare against the P-values at the
// approximant (or at its four sqrt(Delta)-shifts when |z| < sqrt(Delta)).
inline Lemma1Report lemma1_check(double delta, const ModuliSet& s) {
    Lemma1Report rep;
    std::vector<std::array<double, 2>> pts;
    for (const FareyNode& n : enumerate_farey(s)) pts.push_back(node_r2_coords(n));
    if (pts.empty()) {
        rep.holds = true;
        return rep;
    }
    KResult kr = count_K_detail(delta, pts);
    rep.K = kr.count;
    // node_r2_coords conjugates a/q, so conjugate the center back.
    std::complex<double> alpha{kr.center[0], -kr.center[1]};
    double tau = std::pow(delta, -0.25);
    rep.approx = dirichlet_approx(alpha, std::max(1.0, tau));
    double sd = std::sqrt(delta);
    std::complex<double> base =
        to_complex(rep.approx.b) / to_complex(rep.approx.r);
    if (std::abs(rep.approx.z) >= sd * (1 - 1e-12)) {
        rep.P.push_back(count_P(base + rep.approx.z, delta, s));
    } else {
        rep.shifted = true;
        for (std::complex<double> sh :
             {std::complex<double>{sd, 0}, {-sd, 0}, {0, sd}, {0, -sd}})
            rep.P.push_back(count_P(base + sh, delta, s));
    }
    std::int64_t maxP = *std::max_element(rep.P.begin(), rep.P.end());
    rep.bound = 4 * maxP;
    rep.holds = rep.K <= rep.bound;
    return rep;
}

}  // namespace gsieve
