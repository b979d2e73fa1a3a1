#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gsieve/common.hpp"
#include "gsieve/farey.hpp"
#include "gsieve/gaussint.hpp"
#include "gsieve/moduli.hpp"

namespace gsieve {

enum class SeqKind { ones, random_phase, random_gaussian, spike, custom };

inline std::string to_string(SeqKind k) {
    switch (k) {
        case SeqKind::ones: return "ones";
        case SeqKind::random_phase: return "random_phase";
        case SeqKind::random_gaussian: return "random_gaussian";
        case SeqKind::spike: return "spike";
        case SeqKind::custom: return "custom";
    }
    return "?";
}

// Coefficients a_n on the lattice disk N(n) <= N, stored in a fixed
// lexicographic (re, im) order so sums are reproducible bit for bit.
struct CoefficientSequence {
    std::int64_t N = 0;
    SeqKind kind = SeqKind::custom;
    std::uint64_t seed = 0;
    bool include_zero = true;
    std::vector<std::pair<GaussInt, std::complex<double>>> entries;
};

inline CoefficientSequence make_sequence(SeqKind kind, std::int64_t N, std::uint64_t seed,
                                         bool include_zero = true,
                                         std::int64_t entry_cap = 4'000'000) {
    if (N < 0) throw std::invalid_argument("make_sequence: N must be >= 0");
    CoefficientSequence seq;
    seq.N = N;
    seq.kind = kind;
    seq.seed = seed;
    seq.include_zero = include_zero;
    std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(N))) + 1;
    for (std::int64_t re = -r; re <= r; ++re)
        for (std::int64_t im = -r; im <= r; ++im) {
            GaussInt n{re, im};
            if (norm(n) > N) continue;
            if (is_zero(n) && !include_zero) continue;
            seq.entries.emplace_back(n, 0.0);
            if (static_cast<std::int64_t>(seq.entries.size()) > entry_cap)
                throw budget_error("make_sequence: entry cap exceeded");
        }

    std::mt19937_64 rng(seed);
    switch (kind) {
        case SeqKind::ones:
            for (auto& [n, a] : seq.entries) a = 1.0;
            break;
        case SeqKind::spike: {
            // Spike at n = 0 when present (so each |S(alpha)| = 1 exactly),
            // otherwise at the lexicographically first support point.
            GaussInt target = include_zero ? GaussInt{0, 0} : seq.entries.front().first;
            for (auto& [n, a] : seq.entries)
                if (n == target) a = 1.0;
            break;
        }
        case SeqKind::random_phase:
            for (auto& [n, a] : seq.entries) {
                double theta = kTwoPi * uniform01(rng);
                a = {std::cos(theta), std::sin(theta)};
            }
            break;
        case SeqKind::random_gaussian:
            for (auto& [n, a] : seq.entries) {
                // Box-Muller; avoids implementation-defined distributions.
                double u1 = std::max(uniform01(rng), 1e-300);
                double u2 = uniform01(rng);
                double rad = std::sqrt(-2.0 * std::log(u1)) * 0.5;  // Var 1/2 per part
                a = {rad * std::cos(kTwoPi * u2), rad * std::sin(kTwoPi * u2)};
            }
            break;
        case SeqKind::custom:
            break;  // caller fills in coefficients
    }
    return seq;
}

// S(alpha) = sum_n a_n e(Re(n*alpha)), compensated summation in entry order.
inline std::complex<double> eval_S(const CoefficientSequence& seq,
                                   std::complex<double> alpha) {
    Kahan re, im;
    for (const auto& [n, a] : seq.entries) {
        double phase = kTwoPi * (n.re * alpha.real() - n.im * alpha.imag());
        double c = std::cos(phase), s = std::sin(phase);
        re.add(a.real() * c - a.imag() * s);
        im.add(a.real() * s + a.imag() * c);
    }
    return {re.sum, im.sum};
}

// Z = sum |a_n|^2.
inline double compute_Z(const CoefficientSequence& seq) {
    Kahan z;
    for (const auto& [n, a] : seq.entries) {
        (void)n;
        z.add(std::norm(a));
    }
    return z.sum;
}

enum class LhsMode { complex_form, r2_form };

struct LhsResult {
    double value = 0;
    std::int64_t node_count = 0;
    double Z = 0;
    LhsMode mode = LhsMode::complex_form;
};

namespace detail {

// |sum_n a_n e(s*x1 + t*x2)|^2 for n = s + it over the stored entries.
// Separable phase tables keep this fast while the accumulation order stays
// fixed (entry order), so results are deterministic.
inline double node_term(const CoefficientSequence& seq, double x1, double x2,
                        const std::vector<std::int64_t>& offsets,
                        std::vector<std::complex<double>>& e1,
                        std::vector<std::complex<double>>& e2) {
    std::int64_t r = offsets[0];
    for (std::int64_t v = -r; v <= r; ++v) {
        double p1 = kTwoPi * v * x1;
        double p2 = kTwoPi * v * x2;
        e1[static_cast<std::size_t>(v + r)] = {std::cos(p1), std::sin(p1)};
        e2[static_cast<std::size_t>(v + r)] = {std::cos(p2), std::sin(p2)};
    }
    Kahan re, im;
    for (const auto& [n, a] : seq.entries) {
        std::complex<double> e = e1[static_cast<std::size_t>(n.re + r)] *
                                 e2[static_cast<std::size_t>(n.im + r)];
        std::complex<double> term = a * e;
        re.add(term.real());
        im.add(term.imag());
    }
    return re.sum * re.sum + im.sum * im.sum;
}

}  // namespace detail

// U = sum_{q in S} sum_{a mod q, (a,q)=1} |S(a/q)|^2. The two modes compute
// each node's phase point along different algebraic routes (complex division
// vs the integer bilinear coordinates); they agree to 1e-9 relative.
inline LhsResult lhs_sum(const ModuliSet& s, const CoefficientSequence& seq, LhsMode mode,
                         std::int64_t node_cap = 4'000'000) {
    std::vector<FareyNode> nodes = enumerate_farey(s, node_cap);
    std::int64_t r = static_cast<std::int64_t>(
                         std::sqrt(static_cast<double>(seq.N))) + 1;
    std::vector<std::int64_t> offsets{r};
    std::vector<std::complex<double>> e1(static_cast<std::size_t>(2 * r + 1));
    std::vector<std::complex<double>> e2(static_cast<std::size_t>(2 * r + 1));

    Kahan total;
    for (const FareyNode& node : nodes) {
        double x1, x2;
        if (mode == LhsMode::complex_form) {
            std::complex<double> alpha = to_complex(node.a) / to_complex(node.q);
            // Re(n*alpha) = s*Re(alpha) + t*(-Im(alpha)) for n = s + it.
            x1 = alpha.real();
            x2 = -alpha.imag();
        } else {
            // Conjugate-node coordinates: exact integer bilinear forms over N(q).
            double nq = static_cast<double>(norm(node.q));
            double xu = static_cast<double>(node.a.re) * node.q.re;
            double yv = static_cast<double>(node.a.im) * node.q.im;
            double xv = static_cast<double>(node.a.re) * node.q.im;
            double yu = static_cast<double>(node.a.im) * node.q.re;
            x1 = (xu + yv) / nq;
            x2 = (xv - yu) / nq;
        }
        total.add(detail::node_term(seq, x1, x2, offsets, e1, e2));
    }
    return {total.sum, static_cast<std::int64_t>(nodes.size()), compute_Z(seq), mode};
}

}  // namespace gsieve
