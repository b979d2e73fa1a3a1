#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsieve/common.hpp"
#include "gsieve/expsum.hpp"
#include "gsieve/farey.hpp"
#include "gsieve/gaussint.hpp"
#include "gsieve/moduli.hpp"

namespace gsieve {

enum class BoundName { huxley, trivial, thm1_sampled, thm2, thm3, thm4 };

inline std::string to_string(BoundName b) {
    switch (b) {
        case BoundName::huxley: return "huxley";
        case BoundName::trivial: return "trivial";
        case BoundName::thm1_sampled: return "thm1_sampled";
        case BoundName::thm2: return "thm2";
        case BoundName::thm3: return "thm3";
        case BoundName::thm4: return "thm4";
    }
    return "?";
}

struct BoundSpec {
    BoundName name = BoundName::huxley;
    double Q = 0;
    double N = 0;
    double epsilon = 0.05;       // exponent knob for (QN)^eps factors
    double X = 1;                // thm2 only
    std::int64_t set_size = 0;   // |S|, thm2 only
    double delta = 0.5;          // thm4 only
};

// Right-hand side of the named bound, unit constant.
inline double rhs_bound(const BoundSpec& s) {
    if (!(s.Q > 0) || !(s.N > 0))
        throw std::invalid_argument("rhs_bound: Q and N must be positive");
    if (!(s.epsilon >= 0 && s.epsilon <= 0.25))
        throw std::invalid_argument("rhs_bound: epsilon must lie in [0, 0.25]");
    switch (s.name) {
        case BoundName::huxley:
        case BoundName::trivial:
            return s.Q * s.Q + s.N;
        case BoundName::thm2:
            if (!(s.X >= 1)) throw std::invalid_argument("rhs_bound: X must be >= 1");
            return s.N + s.Q * s.X * std::pow(s.N, s.epsilon) *
                             (std::sqrt(s.N) + static_cast<double>(s.set_size));
        case BoundName::thm3:
            return std::pow(s.Q * s.N, s.epsilon) *
                   (s.Q * s.Q * s.Q + s.Q * s.Q * std::sqrt(s.N) + s.N);
        case BoundName::thm4: {
            if (s.Q < 16) throw std::domain_error("rhs_bound: thm4 needs Q >= 16");
            if (!(s.delta > 0 && s.delta < 1))
                throw std::invalid_argument("rhs_bound: thm4 needs delta in (0,1)");
            return (1.0 / (1.0 - s.delta)) * s.Q * s.Q * std::log(std::log(s.Q)) /
                   std::log(s.Q);
        }
        case BoundName::thm1_sampled:
            throw std::invalid_argument("rhs_bound: thm1_sampled needs the sampled evaluator");
    }
    throw std::logic_error("rhs_bound: unknown bound");
}

namespace detail {

// Van der Corput base-2 sequence: 0, 1, 1/2, 1/4, 3/4, ... so that grids of
// increasing sample count are nested (monotone sampled suprema).
inline double vdc_fraction(int index) {
    if (index == 0) return 0.0;
    if (index == 1) return 1.0;
    int i = index - 1;
    double x = 0, base = 0.5;
    while (i > 0) {
        x += (i & 1) * base;
        i >>= 1;
        base *= 0.5;
    }
    return x;
}

}  // namespace detail

// Sampled evaluation of the master bound's geometric factor:
//   N * (1 + max over sampled (r, z, h) of
//        sum_{t|r} sum_{0<|m|<=3|rz|sqrt(Q)/|t|, (m,r/t)=1}
//            A_t(sqrt(Q)/(sqrt(N)|z t|), r/t, h m)).
// The continuous sup over z and the unbounded h range are sampled on a nested
// grid, so the result is a LOWER bound of the true value, monotone
// nondecreasing in `samples`.
inline double theorem1_rhs_sampled(const ModuliSet& S, double N, int samples) {
    if (!(N >= 1)) throw std::invalid_argument("theorem1_rhs_sampled: N must be >= 1");
    if (samples < 1) throw std::invalid_argument("theorem1_rhs_sampled: samples >= 1");
    double Q = static_cast<double>(S.norm_bound);
    double sqrtQ = std::sqrt(Q);
    double best = 0;

    std::int64_t r_norm_cap = static_cast<std::int64_t>(std::sqrt(N) + 1e-9);
    for (std::int64_t rre = 1; rre * rre <= r_norm_cap; ++rre)
        for (std::int64_t rim = 0; rre * rre + rim * rim <= r_norm_cap; ++rim) {
            GaussInt r{rre, rim};
            double abs_r = std::sqrt(static_cast<double>(norm(r)));
            double zlo = 1.0 / std::sqrt(N);
            double zhi = 2.0 / (abs_r * std::pow(N, 0.25));
            if (zhi < zlo) continue;

            ResidueSystem rs = residue_system(r);
            std::vector<GaussInt> hs;
            for (std::size_t i = 0; i < rs.representatives.size(); ++i)
                if (rs.reduced_mask[i]) hs.push_back(rs.representatives[i]);
            if (static_cast<int>(hs.size()) > samples)
                hs.resize(static_cast<std::size_t>(samples));

            std::vector<GaussInt> divs = divisors_non_associate(r);
            for (int zi = 0; zi < samples; ++zi) {
                double f = detail::vdc_fraction(zi);
                double zr = zlo * std::pow(zhi / zlo, f);
                for (int ang = 0; ang < 8; ++ang) {
                    double theta = kTwoPi * ang / 8.0;
                    std::complex<double> z{zr * std::cos(theta), zr * std::sin(theta)};
                    double rz = abs_r * zr;
                    for (GaussInt h : hs) {
                        double total = 0;
                        for (GaussInt t : divs) {
                            GaussInt k = canonical_associate(div_exact(r, t));
                            auto st = subset_t(S, t);
                            double abs_t = std::sqrt(static_cast<double>(norm(t)));
                            double u = sqrtQ / (std::sqrt(N) * zr * abs_t);
                            u = std::min(u, sqrtQ / abs_t);
                            double mrad = 3.0 * rz * sqrtQ / abs_t;
                            std::int64_t mb = static_cast<std::int64_t>(mrad) + 1;
                            for (std::int64_t mre = -mb; mre <= mb; ++mre)
                                for (std::int64_t mim = -mb; mim <= mb; ++mim) {
                                    GaussInt m{mre, mim};
                                    if (is_zero(m)) continue;
                                    double am = std::sqrt(static_cast<double>(norm(m)));
                                    if (am > mrad) continue;
                                    if (!coprime(m, k)) continue;
                                    total += count_A_t(st, u, k, h * m, sqrtQ / abs_t);
                                }
                        }
                        best = std::max(best, total);
                    }
                }
            }
        }
    return N * (1.0 + best);
}

struct ExperimentConfig {
    SetKind set = SetKind::all;
    std::int64_t Q = 0;  // generator bound for squares; norm bound otherwise
    std::int64_t N = 0;
    SeqKind seq = SeqKind::ones;
    std::uint64_t seed = 0;
    std::vector<BoundSpec> bounds;
};

struct BoundOutcome {
    BoundSpec spec;
    double rhs = 0;
    double ratio = 0;  // lhs / (rhs * Z)
};

struct SieveReport {
    ExperimentConfig config;
    double lhs = 0;
    double Z = 0;
    std::int64_t farey_nodes = 0;
    std::vector<BoundOutcome> outcomes;
    double seconds = 0;
};

// Build the set and sequence, evaluate the quadratic form and every requested
// bound. Deterministic given the config (the wall time excepted). BoundSpec
// fields left at 0 are filled from the config: Q from the set's norm bound
// (generator bound for thm3), N from the config.
inline SieveReport run_experiment(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    ModuliSet s = build_set(cfg.set, cfg.Q);
    CoefficientSequence seq = make_sequence(cfg.seq, cfg.N, cfg.seed);
    LhsResult lhs = lhs_sum(s, seq, LhsMode::complex_form);

    SieveReport rep;
    rep.config = cfg;
    rep.lhs = lhs.value;
    rep.Z = lhs.Z;
    rep.farey_nodes = lhs.node_count;
    for (BoundSpec spec : cfg.bounds) {
        if (spec.Q == 0)
            spec.Q = (spec.name == BoundName::thm3)
                         ? static_cast<double>(s.bound_Q)
                         : static_cast<double>(s.norm_bound);
        if (spec.N == 0) spec.N = static_cast<double>(cfg.N);
        if (spec.set_size == 0) spec.set_size = static_cast<std::int64_t>(s.elements.size());
        double rhs = rhs_bound(spec);
        double ratio = rep.lhs / (rhs * rep.Z);
        rep.outcomes.push_back({spec, rhs, ratio});
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---- Counting-chain empirical checks -------------------------------------

struct Lemma2Instance {
    GaussInt b, r;
    std::complex<double> z;
    std::int64_t P = 0;            // exact P(b/r + z)
    double delta_small = 0;        // delta = Q Delta / |z|^2
    double integral_grid = 0;      // grid Riemann sum of the Pi integral
    double error_bound = 0;        // discretization error majorant
    double bound = 0;              // 16 + 4/(pi delta) (integral + error)
    bool lemma2_holds = false;
    double lemma3_majorant = 0;    // 16 + sum_t sum_m A_t(...), unit constant
    double lemma3_ratio = 0;       // P / lemma3_majorant (report-only)
};

struct LemmaChainReport {
    double Q = 0, N = 0, Delta = 0;
    std::vector<Lemma2Instance> instances;
    bool all_hold = true;
};

namespace detail {

// Pi(y, delta) = #{(q, m) : q in S, |q - y| <= sqrt(delta), m != 0,
//                m == -b q (mod r), |m - r z y| <= 2 |r z| sqrt(delta)}.
inline std::int64_t pi_quantity(const ModuliSet& S, std::complex<double> y, double delta,
                                GaussInt b, GaussInt r, std::complex<double> z) {
    double sd = std::sqrt(delta);
    std::complex<double> rz = to_complex(r) * z;
    double mrad = 2.0 * std::abs(rz) * sd;
    std::complex<double> mc = rz * y;
    std::int64_t total = 0;
    for (GaussInt q : S.elements) {
        if (std::abs(to_complex(q) - y) > sd) continue;
        GaussInt target = GaussInt{0, 0} - b * q;
        std::int64_t box = static_cast<std::int64_t>(mrad + std::abs(mc)) + 1;
        for (std::int64_t mre = -box; mre <= box; ++mre)
            for (std::int64_t mim = -box; mim <= box; ++mim) {
                GaussInt m{mre, mim};
                if (is_zero(m)) continue;
                if (std::abs(to_complex(m) - mc) > mrad) continue;
                if (congruent(m, target, r)) ++total;
            }
    }
    return total;
}

}  // namespace detail

// Empirical Lemma-2 chain: for sampled admissible (b, r, z), compare the exact
// P(b/r + z) against 16 + 4/(pi delta) * integral of Pi over B(0, sqrt(Q)),
// the integral approximated by a grid Riemann sum with an explicit convex-
// boundary discretization error. The A_t majorant carries an unspecified
// proof constant, so its ratio is recorded but never asserted.
inline LemmaChainReport lemma_chain_check(const ModuliSet& S, std::int64_t N, int trials,
                                          std::uint64_t seed = 1) {
    if (N < 2) throw std::invalid_argument("lemma_chain_check: N must be >= 2");
    LemmaChainReport rep;
    double Q = static_cast<double>(S.norm_bound);
    double Delta = 1.0 / static_cast<double>(N);
    rep.Q = Q;
    rep.N = static_cast<double>(N);
    rep.Delta = Delta;
    double tau = std::pow(Delta, -0.25);
    double sqrtQ = std::sqrt(Q);

    std::mt19937_64 rng(seed);
    std::vector<GaussInt> rs;
    std::int64_t rcap = static_cast<std::int64_t>(tau * tau + 1e-9);
    for (std::int64_t re = 1; re * re <= rcap; ++re)
        for (std::int64_t im = 0; re * re + im * im <= rcap; ++im)
            rs.push_back({re, im});

    for (int trial = 0; trial < trials; ++trial) {
        GaussInt r = rs[rng() % rs.size()];
        ResidueSystem sys = residue_system(r);
        std::vector<GaussInt> bs;
        for (std::size_t i = 0; i < sys.representatives.size(); ++i)
            if (sys.reduced_mask[i]) bs.push_back(sys.representatives[i]);
        GaussInt b = bs[rng() % bs.size()];
        double abs_r = std::sqrt(static_cast<double>(norm(r)));
        double zlo = std::sqrt(Delta);
        double zhi = std::max(zlo, 2.0 / (abs_r * tau));
        // First trial exercises the |z| = Delta^{1/2} boundary exactly.
        double zr = (trial == 0) ? zlo : zlo * std::pow(zhi / zlo, uniform01(rng));
        double theta = kTwoPi * uniform01(rng);
        std::complex<double> z{zr * std::cos(theta), zr * std::sin(theta)};

        Lemma2Instance inst;
        inst.b = b;
        inst.r = r;
        inst.z = z;
        std::complex<double> alpha = to_complex(b) / to_complex(r) + z;
        inst.P = count_P(alpha, Delta, S);
        double delta = Q * Delta / (zr * zr);
        inst.delta_small = delta;

        // Grid Riemann sum of the Pi integral over B(0, sqrt(Q)).
        double sd = std::sqrt(delta);
        double h = sd / 8.0;
        Kahan grid;
        std::int64_t cells = static_cast<std::int64_t>(std::ceil(2.0 * sqrtQ / h));
        for (std::int64_t i = 0; i < cells; ++i)
            for (std::int64_t j = 0; j < cells; ++j) {
                std::complex<double> y{-sqrtQ + (i + 0.5) * h, -sqrtQ + (j + 0.5) * h};
                if (std::abs(y) > sqrtQ) continue;
                std::int64_t v = detail::pi_quantity(S, y, delta, b, r, z);
                if (v) grid.add(static_cast<double>(v) * h * h);
            }
        inst.integral_grid = grid.sum;

        // Each admissible (q, m) pair contributes a convex y-region contained
        // in a disk of radius sqrt(delta); the Riemann-sum error per pair is
        // at most perimeter * h * sqrt(2) + 2 pi (h sqrt(2))^2.
        std::complex<double> rz = to_complex(r) * z;
        std::int64_t pairs = 0;
        for (GaussInt q : S.elements) {
            std::complex<double> mc = rz * to_complex(q);
            double mrad = 3.0 * std::abs(rz) * sd;
            GaussInt target = GaussInt{0, 0} - b * q;
            std::int64_t box = static_cast<std::int64_t>(mrad + std::abs(mc)) + 1;
            for (std::int64_t mre = -box; mre <= box; ++mre)
                for (std::int64_t mim = -box; mim <= box; ++mim) {
                    GaussInt m{mre, mim};
                    if (is_zero(m)) continue;
                    if (std::abs(to_complex(m) - mc) > mrad) continue;
                    if (congruent(m, target, r)) ++pairs;
                }
        }
        inst.error_bound = static_cast<double>(pairs) *
                           (2.0 * kPi * sd * h * std::sqrt(2.0) + 4.0 * kPi * h * h);
        inst.bound = 16.0 + 4.0 / (kPi * delta) * (inst.integral_grid + inst.error_bound);
        inst.lemma2_holds = static_cast<double>(inst.P) <= inst.bound;

        // Lemma-3 style majorant (unit constant, report-only ratio).
        GaussInt bbar = is_unit(r) ? GaussInt{1, 0} : inverse_mod(b, r);
        double majorant = 16.0;
        for (GaussInt t : divisors_non_associate(r)) {
            GaussInt k = canonical_associate(div_exact(r, t));
            auto st = subset_t(S, t);
            double abs_t = std::sqrt(static_cast<double>(norm(t)));
            double u = std::sqrt(Q * Delta) / (zr * abs_t);
            double mrad = 3.0 * std::abs(rz) * sqrtQ / abs_t;
            std::int64_t mb = static_cast<std::int64_t>(mrad) + 1;
            for (std::int64_t mre = -mb; mre <= mb; ++mre)
                for (std::int64_t mim = -mb; mim <= mb; ++mim) {
                    GaussInt m{mre, mim};
                    if (is_zero(m)) continue;
                    if (std::sqrt(static_cast<double>(norm(m))) > mrad) continue;
                    if (!coprime(m, k)) continue;
                    GaussInt l = GaussInt{0, 0} - bbar * m;
                    majorant += count_A_t(st, u, k, l, sqrtQ / abs_t);
                }
        }
        inst.lemma3_majorant = majorant;
        inst.lemma3_ratio = static_cast<double>(inst.P) / majorant;

        rep.all_hold = rep.all_hold && inst.lemma2_holds;
        rep.instances.push_back(inst);
    }
    return rep;
}

// ---- Brun-Titchmarsh ------------------------------------------------------

struct BTConfig {
    GaussInt k{1, 0};
    GaussInt l{0, 0};
    double u = 0;
    std::complex<double> y{0, 0};
};

struct BTInstance {
    BTConfig cfg;
    std::int64_t count = 0;  // Gaussian primes == l mod k in B(y, u)
    double bound = 0;        // (2^5/pi) u^2 / (phi(k) log(u^2/N(k)))
    bool holds = false;
};

struct BTReport {
    std::vector<BTInstance> instances;
    bool all_hold = true;
    double max_phi_ratio = 0;  // max of N(r)/phi(r) / log log N(r), report-only
};

// Prime-counting upper bound check. Configurations with u^2/N(k) <= 1 are
// rejected (the logarithm would be nonpositive).
inline BTReport brun_titchmarsh_check(double prime_norm_cap,
                                      const std::vector<BTConfig>& configs) {
    BTReport rep;
    for (const BTConfig& c : configs) {
        double nk = static_cast<double>(norm(c.k));
        if (!(c.u * c.u / nk > 1.0))
            throw std::invalid_argument("brun_titchmarsh_check: need u^2/N(k) > 1");
        if (!coprime(c.k, c.l))
            throw std::invalid_argument("brun_titchmarsh_check: need gcd(k,l) = 1");
        double reach = std::abs(c.y) + c.u;
        if (reach * reach > prime_norm_cap)
            throw budget_error("brun_titchmarsh_check: ball exceeds the prime cap");

        BTInstance inst;
        inst.cfg = c;
        std::int64_t lo_re = static_cast<std::int64_t>(std::floor(c.y.real() - c.u - 1));
        std::int64_t hi_re = static_cast<std::int64_t>(std::ceil(c.y.real() + c.u + 1));
        std::int64_t lo_im = static_cast<std::int64_t>(std::floor(c.y.imag() - c.u - 1));
        std::int64_t hi_im = static_cast<std::int64_t>(std::ceil(c.y.imag() + c.u + 1));
        for (std::int64_t re = lo_re; re <= hi_re; ++re)
            for (std::int64_t im = lo_im; im <= hi_im; ++im) {
                GaussInt p{re, im};
                if (is_zero(p)) continue;
                if (std::abs(to_complex(p) - c.y) > c.u * (1 + 1e-12)) continue;
                if (!congruent(p, c.l, c.k)) continue;
                if (is_prime(p)) ++inst.count;
            }
        double phik = static_cast<double>(euler_phi(c.k));
        inst.bound = (32.0 / kPi) * c.u * c.u / (phik * std::log(c.u * c.u / nk));
        inst.holds = static_cast<double>(inst.count) <= inst.bound;
        rep.all_hold = rep.all_hold && inst.holds;
        rep.instances.push_back(inst);
    }

    // N(r)/phi(r) against log log N(r), canonical r, norms in [16, cap].
    std::int64_t cap = static_cast<std::int64_t>(prime_norm_cap);
    std::int64_t rmax = static_cast<std::int64_t>(std::sqrt(static_cast<double>(cap))) + 1;
    for (std::int64_t re = 1; re <= rmax; ++re)
        for (std::int64_t im = 0; im <= rmax; ++im) {
            GaussInt r{re, im};
            std::int64_t nr = norm(r);
            if (nr < 16 || nr > cap) continue;
            double ratio = static_cast<double>(nr) /
                           static_cast<double>(euler_phi(r)) /
                           std::log(std::log(static_cast<double>(nr)));
            rep.max_phi_ratio = std::max(rep.max_phi_ratio, ratio);
        }
    return rep;
}

}  // namespace gsieve
