#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gsieve/lsr2.hpp"

using namespace gsieve;

namespace {

// Independent quadrature oracle for the 1-D Fourier transform of
// (sin(pi x)/(2x))^2: composite Simpson on [0, K] plus an oscillatory tail
// evaluated by two rounds of integration by parts.
double phi_hat_1d_quadrature(double s) {
    const double K = 1000.0;
    const std::int64_t steps = 1 << 22;  // Simpson panels over [0, K]
    const double h = K / steps;
    auto f = [&](double x) { return fejer_phi_1d(x) * std::cos(kTwoPi * s * x); };
    Kahan acc;
    acc.add(f(0.0));
    acc.add(f(K));
    for (std::int64_t i = 1; i < steps; ++i)
        acc.add((i % 2 ? 4.0 : 2.0) * f(i * h));
    double head = 2.0 * acc.sum * h / 3.0;  // even integrand: full line = 2x half line

    // Tail: phi_1d(x) cos(2 pi s x) = [cos(2 pi s x) - cos(2 pi (1+s) x)/2
    // - cos(2 pi (1-s) x)/2] / (8 x^2) for x > 0.
    auto tail_cos = [&](double a) {
        if (a == 0.0) return 1.0 / K;  // integral of 1/x^2
        double b = kTwoPi * a;
        return -std::sin(b * K) / (b * K * K) + 2.0 * std::cos(b * K) / (b * b * K * K * K);
    };
    double tail = (tail_cos(s) - 0.5 * tail_cos(1.0 + s) - 0.5 * tail_cos(1.0 - s)) / 8.0;
    return head + 2.0 * tail;
}

}  // namespace

TEST_CASE("fejer_phi pointwise values and positivity") {
    CHECK(fejer_phi({0, 0}) == doctest::Approx(std::pow(kPi / 2, 4)).epsilon(1e-14));
    CHECK(fejer_phi({1, 0}) == doctest::Approx(0.0));
    CHECK(fejer_phi({0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 10000; ++i) {
        std::array<double, 2> x{4 * uniform01(rng) - 2, 4 * uniform01(rng) - 2};
        CHECK(fejer_phi(x) >= 0.0);
        std::array<double, 2> inside{uniform01(rng) - 0.5, uniform01(rng) - 0.5};
        CHECK(fejer_phi(inside) >= 1.0 - 1e-12);
    }
}

TEST_CASE("fejer_phi_hat values and quadrature oracle") {
    double c = kPi * kPi / 4;
    CHECK(fejer_phi_hat({0, 0}) == doctest::Approx(c * c).epsilon(1e-14));
    CHECK(fejer_phi_hat({1.0, 0.3}) == doctest::Approx(0.0));
    CHECK(fejer_phi_hat({2.5, 0.1}) == doctest::Approx(0.0));

    double got = phi_hat_1d_quadrature(0.3) * phi_hat_1d_quadrature(0.7);
    CHECK(std::fabs(got - fejer_phi_hat({0.3, 0.7})) < 1e-6);
}

TEST_CASE("v_kernel closed form at distinguished points") {
    double N = 25, delta = 1.0 / 16;
    double M = 2 * (std::sqrt(N) + std::sqrt(16.0));
    double c = kPi * kPi / 4;
    VKernelResult r0 = v_kernel({0, 0}, N, delta, 4000);
    CHECK(r0.scale_M == doctest::Approx(M));
    CHECK(r0.closed == doctest::Approx(M * M * c * c).epsilon(1e-12));
    CHECK(r0.direct == doctest::Approx(r0.closed).epsilon(1e-10));

    // Support edge: |y_1| >= 1/M kills the closed form, and the series too.
    VKernelResult re = v_kernel({1.5 / M, 0.1}, N, delta, 4000);
    CHECK(re.closed == 0.0);
    CHECK(std::fabs(re.direct) < 1e-8);

    CHECK_THROWS_AS(v_kernel({0, 0}, N, 0.7, 4000), std::invalid_argument);
    CHECK_THROWS_AS(v_kernel({0, 0}, N, delta, 10), std::invalid_argument);
}

TEST_CASE("v_kernel direct/closed agreement on 100 random configurations") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        double N = (i % 2) ? 16.0 : 64.0;
        double delta = (i % 4 < 2) ? 1.0 / 16 : 1.0 / 64;
        std::array<double, 2> y{uniform01(rng) - 0.5, uniform01(rng) - 0.5};
        VKernelResult r = v_kernel(y, N, delta, 5000);  // throws if |d-c| >= 1e-6
        CHECK(std::fabs(r.direct - r.closed) < 1e-6);
        // The truncated partial sum is a loose cross-check (tail ~ M^3/T).
        double scale = std::max(1.0, std::fabs(r.direct));
        CHECK(std::fabs(r.truncated - r.direct) < 0.5 * scale + 5.0);
    }
}

TEST_CASE("v_kernel truncated sum converges to the exact resummation") {
    std::array<double, 2> y{0.013, -0.021};
    double prev = 1e300;
    for (std::int64_t T : {1000, 10000, 100000}) {
        VKernelResult r = v_kernel(y, 16.0, 1.0 / 16, T);
        double err = std::fabs(r.truncated - r.direct);
        CHECK(err <= prev * 1.2);  // roughly decreasing
        prev = err;
    }
    VKernelResult fine = v_kernel(y, 16.0, 1.0 / 16, 2'000'000);
    CHECK(std::fabs(fine.truncated - fine.direct) <
          1e-3 * std::max(1.0, std::fabs(fine.direct)));
}

TEST_CASE("duality_gap rank-1 and random instances") {
    PointSet one{{0.37, 0.81}};
    DualityResult d1 = duality_gap_detail(one, 16);
    double disk = static_cast<double>(detail::disk_lattice(16).size());
    CHECK(d1.gap < 1e-12);
    CHECK(d1.sigma_rows == doctest::Approx(std::sqrt(disk)).epsilon(1e-10));

    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        PointSet pts;
        for (int i = 0; i < 5; ++i) pts.push_back({uniform01(rng), uniform01(rng)});
        CHECK(duality_gap(pts, 16) < 1e-9);
    }
}

TEST_CASE("duality_gap duplicated point scales the norm by sqrt 2") {
    PointSet one{{0.21, 0.64}};
    PointSet two{{0.21, 0.64}, {0.21, 0.64}};
    DualityResult a = duality_gap_detail(one, 25);
    DualityResult b = duality_gap_detail(two, 25);
    CHECK(b.gap < 1e-9);
    CHECK(b.sigma_rows == doctest::Approx(std::sqrt(2.0) * a.sigma_rows).epsilon(1e-9));
}

TEST_CASE("spectral_norm basics and Rayleigh bound") {
    PointSet one{{0.11, 0.92}};
    double disk = static_cast<double>(detail::disk_lattice(36).size());
    CHECK(spectral_norm(one, 36) == doctest::Approx(disk).epsilon(1e-8));

    // Two well-separated points, large N: 2x2 Gram, compare with the direct
    // eigenvalue formula lambda_max = g0 + |g01|.
    PointSet pair{{0.13, 0.27}, {0.63, 0.77}};
    auto lattice = detail::disk_lattice(400);
    double g0 = static_cast<double>(lattice.size());
    std::complex<double> g01 = 0;
    for (auto n : lattice) {
        double phase = kTwoPi * (n[0] * (pair[0][0] - pair[1][0]) +
                                 n[1] * (pair[0][1] - pair[1][1]));
        g01 += std::complex<double>{std::cos(phase), std::sin(phase)};
    }
    double oracle = g0 + std::abs(g01);
    double got = spectral_norm(pair, 400);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(got == doctest::Approx(g0).epsilon(0.05));  // near-orthogonal rows

    // Rayleigh quotient: spectral_norm >= lhs/Z for arbitrary sequences.
    std::mt19937_64 rng(23);
    PointSet pts;
    for (int i = 0; i < 6; ++i) pts.push_back({uniform01(rng), uniform01(rng)});
    double lam = spectral_norm(pts, 25);
    for (int trial = 0; trial < 10; ++trial) {
        CoefficientSequence seq = make_sequence(SeqKind::random_phase, 25, 100 + trial);
        Kahan lhs;
        for (auto x : pts) {
            Kahan re, im;
            for (const auto& [n, a] : seq.entries) {
                double phase = kTwoPi * (n.re * x[0] + n.im * x[1]);
                double c = std::cos(phase), s = std::sin(phase);
                re.add(a.real() * c - a.imag() * s);
                im.add(a.real() * s + a.imag() * c);
            }
            lhs.add(re.sum * re.sum + im.sum * im.sum);
        }
        CHECK(lhs.sum / compute_Z(seq) <= lam * (1 + 1e-9));
    }
}

TEST_CASE("theorem5_ratio identities and frozen constant") {
    // Single point, spike sequence: LHS = 1 exactly.
    PointSet one{{0.4, 0.3}};
    CoefficientSequence spike = make_sequence(SeqKind::spike, 16, 0);
    double delta = 1.0 / 16;
    double expect = 1.0 / (1.0 * (16.0 + 16.0) * 1.0);
    CHECK(theorem5_ratio(one, spike, delta) == doctest::Approx(expect).epsilon(1e-12));

    // Homogeneity: doubling all coefficients leaves the ratio unchanged.
    std::mt19937_64 rng(29);
    PointSet pts;
    for (int i = 0; i < 8; ++i) pts.push_back({uniform01(rng), uniform01(rng)});
    CoefficientSequence seq = make_sequence(SeqKind::random_phase, 36, 5);
    CoefficientSequence dbl = seq;
    for (auto& [n, a] : dbl.entries) a *= 2.0;
    CHECK(theorem5_ratio(pts, seq, delta) ==
          doctest::Approx(theorem5_ratio(pts, dbl, delta)).epsilon(1e-12));

    // Frozen planar-sieve constant over random grids.
    for (int trial = 0; trial < 15; ++trial) {
        PointSet rp;
        int R = 5 + static_cast<int>(rng() % 20);
        for (int i = 0; i < R; ++i) rp.push_back({uniform01(rng), uniform01(rng)});
        std::int64_t N = 16 + static_cast<std::int64_t>(rng() % 64);
        double d = (trial % 2) ? 1.0 / 16 : 1.0 / 64;
        CoefficientSequence s = make_sequence(SeqKind::random_phase, N, rng());
        CHECK(theorem5_ratio(rp, s, d) <= 12.2);
    }
}
