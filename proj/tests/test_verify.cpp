#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gsieve/verify.hpp"

using namespace gsieve;

TEST_CASE("rhs_bound closed forms") {
    CHECK(rhs_bound({BoundName::huxley, 10, 90}) == doctest::Approx(190.0));
    CHECK(rhs_bound({BoundName::trivial, 10, 90}) == doctest::Approx(190.0));

    BoundSpec t3{BoundName::thm3, 4, 16};
    t3.epsilon = 0.0;
    CHECK(rhs_bound(t3) == doctest::Approx(144.0));

    BoundSpec t4{BoundName::thm4, 16, 64};
    t4.delta = 0.5;
    CHECK(rhs_bound(t4) ==
          doctest::Approx(2.0 * 256.0 * std::log(std::log(16.0)) / std::log(16.0)));

    BoundSpec t2{BoundName::thm2, 4, 16};
    t2.epsilon = 0.0;
    t2.X = 2.0;
    t2.set_size = 3;
    CHECK(rhs_bound(t2) == doctest::Approx(16.0 + 4.0 * 2.0 * (4.0 + 3.0)));

    BoundSpec bad4{BoundName::thm4, 8, 64};
    CHECK_THROWS_AS(rhs_bound(bad4), std::domain_error);
    BoundSpec bad_eps{BoundName::huxley, 4, 16};
    bad_eps.epsilon = 0.5;
    CHECK_THROWS_AS(rhs_bound(bad_eps), std::invalid_argument);
}

TEST_CASE("theorem1_rhs_sampled hand cases and monotonicity") {
    ModuliSet empty = custom_set({}, 1);
    CHECK(theorem1_rhs_sampled(empty, 16, 2) == doctest::Approx(16.0));

    // S = {1}: every A_t collapses to an indicator, and the inner double sum
    // at the widest sampled |z| becomes the number of nonzero m with
    // |m| <= 3 (r = 1 dominates). Oracle: lattice points of norm <= 9.
    ModuliSet unit = custom_set({GaussInt{1, 0}}, 1);
    std::int64_t disk9 = 0;
    for (std::int64_t re = -3; re <= 3; ++re)
        for (std::int64_t im = -3; im <= 3; ++im)
            if (re * re + im * im <= 9 && !(re == 0 && im == 0)) ++disk9;
    CHECK(disk9 == 28);
    CHECK(theorem1_rhs_sampled(unit, 16, 4) ==
          doctest::Approx(16.0 * (1.0 + static_cast<double>(disk9))));

    ModuliSet squares = build_set(SetKind::squares, 3);
    double prev = 0;
    for (int samples : {1, 2, 3}) {
        double v = theorem1_rhs_sampled(squares, 256, samples);
        CHECK(std::isfinite(v));
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("run_experiment hand case and determinism") {
    ExperimentConfig cfg;
    cfg.set = SetKind::all;
    cfg.Q = 1;
    cfg.N = 1;
    cfg.seq = SeqKind::spike;
    cfg.seed = 0;
    cfg.bounds.push_back({BoundName::huxley});
    SieveReport rep = run_experiment(cfg);
    CHECK(rep.lhs == doctest::Approx(4.0));  // phi(unit) = 1, four units
    CHECK(rep.Z == doctest::Approx(1.0));
    CHECK(rep.farey_nodes == 4);
    REQUIRE(rep.outcomes.size() == 1);
    CHECK(rep.outcomes[0].rhs == doctest::Approx(2.0));
    CHECK(rep.outcomes[0].ratio == doctest::Approx(2.0));

    ExperimentConfig c2;
    c2.set = SetKind::all;
    c2.Q = 8;
    c2.N = 25;
    c2.seq = SeqKind::random_phase;
    c2.seed = 42;
    c2.bounds.push_back({BoundName::huxley});
    SieveReport a = run_experiment(c2);
    SieveReport b = run_experiment(c2);
    CHECK(a.lhs == b.lhs);  // bitwise determinism, wall time excepted
    CHECK(a.Z == b.Z);
    CHECK(a.farey_nodes == b.farey_nodes);
    CHECK(a.outcomes[0].rhs == b.outcomes[0].rhs);
    CHECK(a.outcomes[0].ratio == b.outcomes[0].ratio);
}

TEST_CASE("run_experiment prime set with thm4 bound") {
    ExperimentConfig cfg;
    cfg.set = SetKind::primes;
    cfg.Q = 64;
    cfg.N = 128;
    cfg.seq = SeqKind::random_phase;
    cfg.seed = 9;
    BoundSpec t4{BoundName::thm4};
    t4.delta = 0.5;
    cfg.bounds.push_back(t4);
    SieveReport rep = run_experiment(cfg);
    REQUIRE(rep.outcomes.size() == 1);
    CHECK(std::isfinite(rep.outcomes[0].ratio));
    CHECK(rep.outcomes[0].ratio > 0);
}

TEST_CASE("lemma_chain_check unit set and boundary z") {
    ModuliSet unit = custom_set({GaussInt{1, 0}}, 1);
    LemmaChainReport rep = lemma_chain_check(unit, 16, 3, 5);
    CHECK(rep.all_hold);
    // Trial 0 sits exactly on the |z| = Delta^{1/2} boundary.
    CHECK(std::abs(rep.instances[0].z) ==
          doctest::Approx(std::sqrt(rep.Delta)).epsilon(1e-12));
}

TEST_CASE("lemma_chain_check random desk instances") {
    ModuliSet s = build_set(SetKind::all, 8);
    LemmaChainReport rep = lemma_chain_check(s, 16, 10, 77);
    CHECK(rep.instances.size() == 10);
    CHECK(rep.all_hold);
    for (const auto& inst : rep.instances) {
        CHECK(inst.P >= 0);
        CHECK(inst.bound >= 16.0);
        CHECK(inst.lemma3_majorant >= 16.0);
        CHECK(inst.lemma3_ratio >= 0.0);
    }
}

TEST_CASE("brun_titchmarsh_check admissible configurations") {
    std::vector<BTConfig> cfgs;
    cfgs.push_back({GaussInt{1, 0}, GaussInt{0, 0}, 20.0, {0, 0}});
    cfgs.push_back({GaussInt{1, 1}, GaussInt{1, 0}, 30.0, {0, 0}});
    cfgs.push_back({GaussInt{2, 1}, GaussInt{1, 0}, 25.0, {10.0, 5.0}});
    cfgs.push_back({GaussInt{3, 0}, GaussInt{1, 1}, 12.0, {-20.0, 14.0}});
    BTReport rep = brun_titchmarsh_check(10000.0, cfgs);
    CHECK(rep.all_hold);
    for (const auto& inst : rep.instances) CHECK(inst.count <= inst.bound);
    CHECK(rep.max_phi_ratio > 0);
    CHECK(rep.max_phi_ratio < 10.0);

    // Direct count oracle for the k = 1+i configuration: primes in B(0, 30)
    // congruent to 1 mod 1+i are exactly the primes of odd norm.
    std::int64_t odd_norm_primes = 0;
    for (std::int64_t re = -31; re <= 31; ++re)
        for (std::int64_t im = -31; im <= 31; ++im) {
            GaussInt p{re, im};
            if (is_zero(p) || re * re + im * im > 900) continue;
            if (is_prime(p) && norm(p) % 2 == 1 &&
                congruent(p, GaussInt{1, 0}, GaussInt{1, 1}))
                ++odd_norm_primes;
        }
    CHECK(rep.instances[1].count == odd_norm_primes);
}

TEST_CASE("brun_titchmarsh_check rejections") {
    std::vector<BTConfig> bad{{GaussInt{2, 1}, GaussInt{1, 0}, 2.0, {0, 0}}};
    CHECK_THROWS_AS(brun_titchmarsh_check(10000.0, bad), std::invalid_argument);
    std::vector<BTConfig> noncop{{GaussInt{2, 0}, GaussInt{1, 1}, 10.0, {0, 0}}};
    CHECK_THROWS_AS(brun_titchmarsh_check(10000.0, noncop), std::invalid_argument);
    std::vector<BTConfig> far{{GaussInt{1, 0}, GaussInt{0, 0}, 50.0, {90.0, 0}}};
    CHECK_THROWS_AS(brun_titchmarsh_check(10000.0, far), budget_error);
}
