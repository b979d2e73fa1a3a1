#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "gsieve/common.hpp"
#include "gsieve/expsum.hpp"
#include "gsieve/farey.hpp"
#include "gsieve/gaussint.hpp"

namespace gsieve {

// Sample points x_r in R^2 for the planar large sieve.
using PointSet = std::vector<std::array<double, 2>>;

// phi(x) = prod_j (sin(pi x_j) / (2 x_j))^2, with the removable singularity
// at x_j = 0 evaluated as (pi/2)^2. Nonnegative everywhere; >= 1 on the
// closed square max(|x_1|, |x_2|) <= 1/2.
inline double fejer_phi_1d(double t) {
    if (t == 0.0) return kPi * kPi / 4.0;
    double s = std::sin(kPi * t) / (2.0 * t);
    return s * s;
}

inline double fejer_phi(std::array<double, 2> x) {
    return fejer_phi_1d(x[0]) * fejer_phi_1d(x[1]);
}

// Fourier transform of phi: (pi^2/4)^2 * max{1-|s_1|,0} * max{1-|s_2|,0}.
inline double fejer_phi_hat(std::array<double, 2> s) {
    double c = kPi * kPi / 4.0;
    return c * c * std::max(1.0 - std::fabs(s[0]), 0.0) *
           std::max(1.0 - std::fabs(s[1]), 0.0);
}

struct VKernelResult {
    double direct = 0;     // full lattice sum, by exact per-coordinate resummation
    double closed = 0;     // product formula from Poisson summation
    double truncated = 0;  // partial sum over |n_j| <= truncation (cross-check)
    double scale_M = 0;    // M = 2(sqrt(N) + Delta^{-1/2})
};

namespace detail {

// F(a) = sum_{n != 0} e(n a)/n^2 = 2 pi^2 B_2({a}) (Fourier series of the
// second Bernoulli polynomial). Used to resum the kernel series exactly.
inline double bernoulli_cosine_series(double a) {
    double f = a - std::floor(a);
    if (f >= 1.0) f = 0.0;
    return 2.0 * kPi * kPi * (f * f - f + 1.0 / 6.0);
}

// Exact value of D(y) = sum_{n in Z} phi_1d(n/M) e(n y). Writing
// phi_1d(n/M) = M^2 (1 - cos(2 pi n / M)) / (8 n^2) for n != 0 and resumming
// with bernoulli_cosine_series gives a closed expression independent of the
// Poisson-side product formula.
inline double v_kernel_1d_exact(double y, double M) {
    double F0 = bernoulli_cosine_series(y);
    double Fp = bernoulli_cosine_series(y + 1.0 / M);
    double Fm = bernoulli_cosine_series(y - 1.0 / M);
    return kPi * kPi / 4.0 + (M * M / 8.0) * (F0 - 0.5 * Fp - 0.5 * Fm);
}

inline double v_kernel_1d_truncated(double y, double M, std::int64_t truncation) {
    Kahan s;
    s.add(kPi * kPi / 4.0);
    for (std::int64_t n = 1; n <= truncation; ++n) {
        double t = static_cast<double>(n) / M;
        s.add(2.0 * fejer_phi_1d(t) * std::cos(kTwoPi * n * y));
    }
    return s.sum;
}

}  // namespace detail

// V(y) = sum_n phi(n / M) e(n . y) with M = 2(sqrt(N) + Delta^{-1/2}).
// `direct` is the exact value of the series (per-coordinate resummation);
// `closed` is the Poisson product formula M^2 (pi^2/4)^2 prod max{1-M|y_j|,0};
// `truncated` is the literal partial sum, kept as a loose cross-check since
// its tail only decays like M^3/truncation. Requires |y_j| <= 1/2.
inline VKernelResult v_kernel(std::array<double, 2> y, double N, double delta,
                              std::int64_t truncation) {
    if (!(delta > 0 && delta <= 0.5))
        throw std::invalid_argument("v_kernel: Delta must lie in (0, 1/2]");
    if (N < 0) throw std::invalid_argument("v_kernel: N must be >= 0");
    if (std::fabs(y[0]) > 0.5 || std::fabs(y[1]) > 0.5)
        throw std::invalid_argument("v_kernel: y must lie in [-1/2, 1/2]^2");
    double M = 2.0 * (std::sqrt(N) + 1.0 / std::sqrt(delta));
    if (static_cast<double>(truncation) < 2.0 * M)
        throw std::invalid_argument("v_kernel: truncation insufficient");

    VKernelResult r;
    r.scale_M = M;
    r.direct = detail::v_kernel_1d_exact(y[0], M) * detail::v_kernel_1d_exact(y[1], M);
    r.truncated = detail::v_kernel_1d_truncated(y[0], M, truncation) *
                  detail::v_kernel_1d_truncated(y[1], M, truncation);
    double c = kPi * kPi / 4.0;
    r.closed = M * M * c * c * std::max(1.0 - M * std::fabs(y[0]), 0.0) *
               std::max(1.0 - M * std::fabs(y[1]), 0.0);
    if (!(std::fabs(r.direct - r.closed) < 1e-6))
        throw std::runtime_error("v_kernel: direct/closed identity violated");
    return r;
}

namespace detail {

// Lattice points n with N(n) <= N, fixed lexicographic order, zero included.
inline std::vector<std::array<std::int64_t, 2>> disk_lattice(std::int64_t N) {
    std::vector<std::array<std::int64_t, 2>> out;
    std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(N))) + 1;
    for (std::int64_t a = -r; a <= r; ++a)
        for (std::int64_t b = -r; b <= r; ++b)
            if (a * a + b * b <= N) out.push_back({a, b});
    return out;
}

using CMat = std::vector<std::vector<std::complex<double>>>;

// Largest eigenvalue of a Hermitian positive semidefinite matrix by power
// iteration with a seeded start vector and a Rayleigh-quotient stopping rule.
inline double power_lambda_max(const CMat& A, double rel_tol, std::int64_t max_iter,
                               std::uint64_t seed) {
    std::size_t n = A.size();
    if (n == 0) return 0.0;
    std::mt19937_64 rng(seed);
    std::vector<std::complex<double>> v(n), w(n);
    double nv = 0;
    for (auto& x : v) {
        x = {2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
        nv += std::norm(x);
    }
    nv = std::sqrt(nv);
    for (auto& x : v) x /= nv;

    double lambda = 0;
    for (std::int64_t it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> acc = 0;
            for (std::size_t j = 0; j < n; ++j) acc += A[i][j] * v[j];
            w[i] = acc;
        }
        std::complex<double> ray = 0;
        double nw = 0;
        for (std::size_t i = 0; i < n; ++i) {
            ray += std::conj(v[i]) * w[i];
            nw += std::norm(w[i]);
        }
        nw = std::sqrt(nw);
        double next = ray.real();
        if (nw == 0.0) return 0.0;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
        if (it > 0 && std::fabs(next - lambda) <= rel_tol * std::max(1.0, std::fabs(next)))
            return next;
        lambda = next;
    }
    throw std::runtime_error("power_lambda_max: no convergence");
}

}  // namespace detail

// Largest-singular-value duality check for c_{rn} = e(n . x_r): lambda_max of
// the row Gram C C^* (R x R) and of the column Gram C^* C (lattice x lattice)
// must coincide. Returns the relative gap between the two estimates.
struct DualityResult {
    double sigma_rows = 0;  // sqrt(lambda_max(C C^*))
    double sigma_cols = 0;  // sqrt(lambda_max(C^* C))
    double gap = 0;         // relative difference
};

inline DualityResult duality_gap_detail(const PointSet& points, std::int64_t N,
                                        double rel_tol = 1e-13,
                                        std::int64_t max_iter = 200'000) {
    if (points.empty()) throw std::invalid_argument("duality_gap: empty point set");
    auto lattice = detail::disk_lattice(N);
    std::size_t R = points.size(), D = lattice.size();

    std::vector<std::vector<std::complex<double>>> C(R,
        std::vector<std::complex<double>>(D));
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t j = 0; j < D; ++j) {
            double phase = kTwoPi * (lattice[j][0] * points[r][0] +
                                     lattice[j][1] * points[r][1]);
            C[r][j] = {std::cos(phase), std::sin(phase)};
        }

    detail::CMat rows(R, std::vector<std::complex<double>>(R));
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t s = 0; s < R; ++s) {
            std::complex<double> acc = 0;
            for (std::size_t j = 0; j < D; ++j) acc += C[r][j] * std::conj(C[s][j]);
            rows[r][s] = acc;
        }
    detail::CMat cols(D, std::vector<std::complex<double>>(D));
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) {
            std::complex<double> acc = 0;
            for (std::size_t r = 0; r < R; ++r) acc += std::conj(C[r][i]) * C[r][j];
            cols[i][j] = acc;
        }

    DualityResult res;
    res.sigma_rows =
        std::sqrt(std::max(0.0, detail::power_lambda_max(rows, rel_tol, max_iter, 12345)));
    res.sigma_cols =
        std::sqrt(std::max(0.0, detail::power_lambda_max(cols, rel_tol, max_iter, 54321)));
    double denom = std::max({res.sigma_rows, res.sigma_cols, 1e-300});
    res.gap = std::fabs(res.sigma_rows - res.sigma_cols) / denom;
    return res;
}

inline double duality_gap(const PointSet& points, std::int64_t N) {
    return duality_gap_detail(points, N).gap;
}

// lambda_max of the Gram matrix G_{rs} = sum_{N(n) <= N} e(n . (x_r - x_s)).
// Equals the sup over unit coefficient sequences of LHS / Z.
inline double spectral_norm(const PointSet& points, std::int64_t N,
                            double rel_tol = 1e-8, std::int64_t max_iter = 100'000) {
    if (points.empty()) throw std::invalid_argument("spectral_norm: empty point set");
    auto lattice = detail::disk_lattice(N);
    std::size_t R = points.size();
    detail::CMat G(R, std::vector<std::complex<double>>(R));
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t s = 0; s < R; ++s) {
            Kahan re, im;
            for (auto n : lattice) {
                double phase = kTwoPi * (n[0] * (points[r][0] - points[s][0]) +
                                         n[1] * (points[r][1] - points[s][1]));
                re.add(std::cos(phase));
                im.add(std::sin(phase));
            }
            G[r][s] = {re.sum, im.sum};
        }
    return detail::power_lambda_max(G, rel_tol, max_iter, 777);
}

// LHS / (K(Delta) (N + Delta^{-1}) Z) for a coefficient sequence evaluated at
// the R^2 sample points (phase n . x). The value is the empirical constant of
// the planar large sieve.
inline double theorem5_ratio(const PointSet& points, const CoefficientSequence& seq,
                             double delta) {
    if (!(delta > 0 && delta <= 0.5))
        throw std::invalid_argument("theorem5_ratio: Delta must lie in (0, 1/2]");
    double Z = compute_Z(seq);
    if (Z == 0.0) throw std::invalid_argument("theorem5_ratio: Z = 0");
    Kahan lhs;
    for (auto x : points) {
        Kahan re, im;
        for (const auto& [n, a] : seq.entries) {
            double phase = kTwoPi * (n.re * x[0] + n.im * x[1]);
            double c = std::cos(phase), s = std::sin(phase);
            re.add(a.real() * c - a.imag() * s);
            im.add(a.real() * s + a.imag() * c);
        }
        lhs.add(re.sum * re.sum + im.sum * im.sum);
    }
    int K = count_K(delta, points);
    double rhs = static_cast<double>(K) *
                 (static_cast<double>(seq.N) + 1.0 / delta) * Z;
    return lhs.sum / rhs;
}

}  // namespace gsieve
