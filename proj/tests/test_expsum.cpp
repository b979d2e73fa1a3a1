#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gsieve/expsum.hpp"

using namespace gsieve;

TEST_CASE("make_sequence support and determinism") {
    CoefficientSequence ones = make_sequence(SeqKind::ones, 1, 0);
    CHECK(ones.entries.size() == 5);  // n in {0, +-1, +-i}
    CHECK(compute_Z(ones) == doctest::Approx(5.0));

    CoefficientSequence spike = make_sequence(SeqKind::spike, 25, 0);
    CHECK(compute_Z(spike) == doctest::Approx(1.0));

    CoefficientSequence a = make_sequence(SeqKind::random_phase, 16, 99);
    CoefficientSequence b = make_sequence(SeqKind::random_phase, 16, 99);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        CHECK(a.entries[i] == b.entries[i]);
    CHECK(compute_Z(a) == doctest::Approx(static_cast<double>(a.entries.size())).epsilon(1e-12));

    CoefficientSequence nz = make_sequence(SeqKind::ones, 4, 0, false);
    for (const auto& [n, c] : nz.entries) CHECK(!is_zero(n));
}

TEST_CASE("eval_S examples") {
    CoefficientSequence ones = make_sequence(SeqKind::ones, 1, 0);
    // alpha = 0: sum of coefficients.
    CHECK(eval_S(ones, {0, 0}).real() == doctest::Approx(5.0));
    // Hand evaluation at alpha = 1/2: 1 + e(1/2) + e(-1/2) + 1 + 1 = 1.
    std::complex<double> v = eval_S(ones, {0.5, 0});
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-12));

    CoefficientSequence spike = make_sequence(SeqKind::spike, 9, 0);
    CHECK(std::abs(eval_S(spike, {0.37, 0.11})) == doctest::Approx(1.0));
}

TEST_CASE("eval_S agrees with an independent direct evaluation") {
    std::mt19937_64 rng(61);
    CoefficientSequence seq = make_sequence(SeqKind::random_phase, 12, 5);
    for (int trial = 0; trial < 25; ++trial) {
        std::complex<double> alpha{2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1};
        // Second route: complex exponential of the full product.
        std::complex<double> direct = 0;
        for (const auto& [n, a] : seq.entries) {
            std::complex<double> na = to_complex(n) * alpha;
            direct += a * std::exp(std::complex<double>(0, kTwoPi * na.real()));
        }
        std::complex<double> got = eval_S(seq, alpha);
        CHECK(std::abs(got - direct) <= 1e-10 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("lhs_sum single-node and spike identities") {
    ModuliSet unit = custom_set({GaussInt{1, 0}}, 1);
    CoefficientSequence seq = make_sequence(SeqKind::random_phase, 9, 3);
    LhsResult r = lhs_sum(unit, seq, LhsMode::complex_form);
    std::complex<double> total = eval_S(seq, {0, 0});
    CHECK(r.value == doctest::Approx(std::norm(total)).epsilon(1e-12));
    CHECK(r.node_count == 1);

    ModuliSet s = build_set(SetKind::all, 8);
    CoefficientSequence spike = make_sequence(SeqKind::spike, 50, 0);
    LhsResult rs = lhs_sum(s, spike, LhsMode::complex_form);
    std::int64_t phi_sum = 0;
    for (GaussInt q : s.elements) phi_sum += euler_phi(q);
    CHECK(rs.value == static_cast<double>(phi_sum));  // exact
    CHECK(rs.node_count == phi_sum);
}

TEST_CASE("dual-form identity on random instances") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        std::int64_t Q = 4 + static_cast<std::int64_t>(rng() % 17);
        std::int64_t N = 16 + static_cast<std::int64_t>(rng() % 85);
        ModuliSet s = build_set(SetKind::all, Q);
        CoefficientSequence seq = make_sequence(SeqKind::random_phase, N, rng());
        LhsResult a = lhs_sum(s, seq, LhsMode::complex_form);
        LhsResult b = lhs_sum(s, seq, LhsMode::r2_form);
        CHECK(std::fabs(a.value - b.value) <= 1e-9 * std::max(a.value, b.value));
    }
}

TEST_CASE("lhs_sum invariant under a global phase") {
    ModuliSet s = build_set(SetKind::all, 6);
    CoefficientSequence seq = make_sequence(SeqKind::random_gaussian, 30, 7);
    LhsResult base = lhs_sum(s, seq, LhsMode::complex_form);
    std::complex<double> phase = std::polar(1.0, 1.234);
    CoefficientSequence rotated = seq;
    for (auto& [n, a] : rotated.entries) a *= phase;
    LhsResult rot = lhs_sum(s, rotated, LhsMode::complex_form);
    CHECK(std::fabs(base.value - rot.value) <= 1e-9 * base.value);
}

TEST_CASE("Huxley sanity bound") {
    // lhs <= C (Q^2 + N) Z with a generous C on small instances.
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 5; ++trial) {
        std::int64_t Q = 4 + static_cast<std::int64_t>(rng() % 10);
        std::int64_t N = 20 + static_cast<std::int64_t>(rng() % 100);
        ModuliSet s = build_set(SetKind::all, Q);
        CoefficientSequence seq = make_sequence(SeqKind::random_phase, N, rng());
        LhsResult r = lhs_sum(s, seq, LhsMode::complex_form);
        double rhs = 8.0 * static_cast<double>(Q * Q + N) * r.Z;
        CHECK(r.value <= rhs);
    }
}
