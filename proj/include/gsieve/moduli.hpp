#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "gsieve/common.hpp"
#include "gsieve/gaussint.hpp"

namespace gsieve {

enum class SetKind { all, squares, primes, custom };

inline std::string to_string(SetKind k) {
    switch (k) {
        case SetKind::all: return "all";
        case SetKind::squares: return "squares";
        case SetKind::primes: return "primes";
        case SetKind::custom: return "custom";
    }
    return "?";
}

// A finite multiset of nonzero moduli. `elements` keeps the literal
// enumeration order of the defining theorem (associates included; for the
// squares kind, one entry per generating q). `norm_bound` is the radius-
// squared bound containing the set: Q for kinds all/primes, Q^2 for squares.
struct ModuliSet {
    SetKind kind = SetKind::custom;
    std::int64_t bound_Q = 0;
    std::int64_t norm_bound = 0;
    std::vector<GaussInt> elements;
};

namespace detail {

// Nonzero lattice points with norm <= Q, deterministic row-major order.
inline std::vector<GaussInt> disk_points(std::int64_t Q) {
    std::vector<GaussInt> out;
    std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(Q))) + 1;
    for (std::int64_t re = -r; re <= r; ++re)
        for (std::int64_t im = -r; im <= r; ++im) {
            GaussInt z{re, im};
            if (!is_zero(z) && norm(z) <= Q) out.push_back(z);
        }
    return out;
}

}  // namespace detail

inline ModuliSet build_set(SetKind kind, std::int64_t Q,
                           std::int64_t element_cap = 2'000'000) {
    if (Q < 1) throw std::invalid_argument("build_set: Q must be >= 1");
    ModuliSet out;
    out.kind = kind;
    out.bound_Q = Q;
    out.norm_bound = (kind == SetKind::squares) ? Q * Q : Q;
    switch (kind) {
        case SetKind::all:
            out.elements = detail::disk_points(Q);
            break;
        case SetKind::squares:
            for (GaussInt q : detail::disk_points(Q)) out.elements.push_back(q * q);
            break;
        case SetKind::primes:
            for (GaussInt q : detail::disk_points(Q))
                if (is_prime(q)) out.elements.push_back(q);
            break;
        case SetKind::custom:
            throw std::invalid_argument("build_set: custom sets are caller-supplied");
    }
    if (static_cast<std::int64_t>(out.elements.size()) > element_cap)
        throw budget_error("build_set: element cap exceeded");
    return out;
}

inline ModuliSet custom_set(std::vector<GaussInt> elements, std::int64_t norm_bound) {
    for (GaussInt q : elements)
        if (is_zero(q)) throw std::invalid_argument("custom_set: zero modulus");
    ModuliSet out;
    out.kind = SetKind::custom;
    out.bound_Q = norm_bound;
    out.norm_bound = norm_bound;
    out.elements = std::move(elements);
    return out;
}

// One representative per associate class, duplicates removed.
inline ModuliSet deduplicated(const ModuliSet& s) {
    ModuliSet out = s;
    for (GaussInt& q : out.elements) q = canonical_associate(q);
    std::sort(out.elements.begin(), out.elements.end());
    out.elements.erase(std::unique(out.elements.begin(), out.elements.end()),
                       out.elements.end());
    return out;
}

// S_t = {q : t*q in S}, multiset semantics (one entry per element of S).
inline std::vector<GaussInt> subset_t(const ModuliSet& s, GaussInt t) {
    if (is_zero(t)) throw std::invalid_argument("subset_t: t must be nonzero");
    std::vector<GaussInt> out;
    for (GaussInt q : s.elements)
        if (divides(t, q)) out.push_back(div_exact(q, t));
    return out;
}

struct DyadicSlice {
    double Q0 = 0;  // slice covers Q0 < N(q) <= 2*Q0
    std::vector<GaussInt> elements;
};

// Partition by norm into slices (Q*2^-j, Q*2^-(j-1)]; their union is exact.
inline std::vector<DyadicSlice> dyadic_slices(const ModuliSet& s) {
    std::vector<DyadicSlice> out;
    double top = static_cast<double>(s.norm_bound);
    for (double q0 = top / 2; ; q0 /= 2) {
        DyadicSlice slice;
        slice.Q0 = q0;
        for (GaussInt q : s.elements) {
            double n = static_cast<double>(norm(q));
            if (n > q0 && n <= 2 * q0) slice.elements.push_back(q);
        }
        out.push_back(std::move(slice));
        if (q0 < 0.5) break;  // norms are >= 1, nothing below this
    }
    return out;
}

struct ATCount {
    int clamped = 0;    // centers restricted to |y| <= center_bound
    int unclamped = 0;  // centers unrestricted
};

namespace detail {

inline int count_in_ball(const std::vector<std::complex<double>>& pts,
                         std::complex<double> center, double u, double eps) {
    int c = 0;
    for (auto p : pts)
        if (std::abs(p - center) <= u + eps) ++c;
    return c;
}

}  // namespace detail

// Exact sup over centers of the number of points of S_t in the residue class
// l mod k inside a closed ball of radius u. The optimum of max-cover by a
// fixed-radius closed disk is attained at a point or at a circumcenter of a
// pair at distance <= 2u, so enumerating those candidates is exact.
inline ATCount count_A_t_detail(const std::vector<GaussInt>& s_t, double u, GaussInt k,
                                GaussInt l, double center_bound) {
    if (is_zero(k)) throw std::invalid_argument("count_A_t: zero modulus");
    if (!coprime(k, l)) throw std::invalid_argument("count_A_t: gcd(k,l) != 1");
    if (u < 0) throw std::invalid_argument("count_A_t: negative radius");

    std::vector<std::complex<double>> pts;
    for (GaussInt q : s_t)
        if (congruent(q, l, k)) pts.push_back(to_complex(q));
    if (pts.empty()) return {};

    const double eps = 1e-9 * (1.0 + u);
    std::vector<std::complex<double>> centers(pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            std::complex<double> d = pts[j] - pts[i];
            double dist = std::abs(d);
            if (dist > 2 * u + eps || dist == 0.0) continue;
            std::complex<double> mid = 0.5 * (pts[i] + pts[j]);
            double h2 = u * u - 0.25 * dist * dist;
            double h = h2 > 0 ? std::sqrt(h2) : 0.0;
            std::complex<double> perp =
                std::complex<double>(-d.imag(), d.real()) * (h / dist);
            centers.push_back(mid + perp);
            centers.push_back(mid - perp);
        }

    ATCount out;
    for (auto c : centers) {
        out.unclamped = std::max(out.unclamped, detail::count_in_ball(pts, c, u, eps));
        std::complex<double> cc = c;
        double r = std::abs(cc);
        if (r > center_bound && r > 0) cc *= center_bound / r;  // radial projection
        out.clamped = std::max(out.clamped, detail::count_in_ball(pts, cc, u, eps));
    }
    return out;
}

inline int count_A_t(const std::vector<GaussInt>& s_t, double u, GaussInt k, GaussInt l,
                     double center_bound) {
    return count_A_t_detail(s_t, u, k, l, center_bound).clamped;
}

struct Condition11Sample {
    GaussInt t, k, l;
    double u = 0;
    int A = 0;
    double expected = 0;  // 1 + (|S_t|/N(k)) * u^2 |t|^2 / Q
    double X = 0;         // A / expected
};

struct Condition11Report {
    double X = 1.0;  // smallest admissible X >= 1 over the sampled grid
    std::size_t samples = 0;
    Condition11Sample worst;
    std::string grid;
};

// Smallest X >= 1 with A_t(u,k,l) <= (1 + (|S_t|/N(k)) u^2 |t|^2 / Q) X over a
// sampled grid of (t,k,l,u) in the Theorem-2 range: |t| <= N^{1/4},
// |k| <= N^{1/4}/|t|, l reduced mod k, |k|sqrt(Q)/(2 N^{1/4}) <= u <= sqrt(Q)/|t|.
inline Condition11Report min_X_condition11(const ModuliSet& s, double Q, double N,
                                           int u_steps = 5, std::size_t l_cap = 32) {
    Condition11Report rep;
    double sqrtQ = std::sqrt(Q);
    double n14 = std::pow(N, 0.25);
    std::int64_t t_norm_cap = static_cast<std::int64_t>(std::sqrt(N));
    rep.grid = "t,k canonical; u geometric " + std::to_string(u_steps) +
               " steps; l reduced residues capped at " + std::to_string(l_cap);
    for (std::int64_t tre = 1; tre * tre <= t_norm_cap; ++tre)
        for (std::int64_t tim = 0; tre * tre + tim * tim <= t_norm_cap; ++tim) {
            GaussInt t{tre, tim};
            std::vector<GaussInt> st = subset_t(s, t);
            double abs_t = std::sqrt(static_cast<double>(norm(t)));
            double center_bound = sqrtQ / abs_t;
            std::int64_t k_norm_cap =
                static_cast<std::int64_t>(std::sqrt(N) / norm(t));
            for (std::int64_t kre = 1; kre * kre <= k_norm_cap; ++kre)
                for (std::int64_t kim = 0; kre * kre + kim * kim <= k_norm_cap; ++kim) {
                    GaussInt k{kre, kim};
                    double abs_k = std::sqrt(static_cast<double>(norm(k)));
                    double u_lo = abs_k * sqrtQ / (2 * n14);
                    double u_hi = center_bound;
                    if (u_lo > u_hi) continue;
                    ResidueSystem rs = residue_system(k);
                    std::size_t used_l = 0;
                    for (std::size_t i = 0;
                         i < rs.representatives.size() && used_l < l_cap; ++i) {
                        if (!rs.reduced_mask[i]) continue;
                        ++used_l;
                        GaussInt l = rs.representatives[i];
                        for (int j = 0; j < u_steps; ++j) {
                            double u = (u_steps == 1)
                                           ? u_hi
                                           : u_lo * std::pow(u_hi / std::max(u_lo, 1e-12),
                                                             j / double(u_steps - 1));
                            int A = count_A_t(st, u, k, l, center_bound);
                            double expected =
                                1.0 + (static_cast<double>(st.size()) / norm(k)) * u * u *
                                          norm(t) / Q;
                            double x = A / expected;
                            ++rep.samples;
                            if (x > rep.X) {
                                rep.X = x;
                                rep.worst = {t, k, l, u, A, expected, x};
                            }
                        }
                    }
                }
        }
    return rep;
}

}  // namespace gsieve
