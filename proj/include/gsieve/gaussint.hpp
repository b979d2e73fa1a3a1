#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gsieve/common.hpp"

namespace gsieve {

// Components are capped so that norms (and the products appearing in
// nearest-rounding division) stay inside signed 64/128-bit arithmetic.
inline constexpr std::int64_t kCoordMax = (std::int64_t{1} << 31) - 1;

struct GaussInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    constexpr GaussInt() = default;
    constexpr GaussInt(std::int64_t r, std::int64_t i) : re(r), im(i) {
        if (r > kCoordMax || r < -kCoordMax || i > kCoordMax || i < -kCoordMax)
            throw std::overflow_error("GaussInt component out of range");
    }

    friend constexpr bool operator==(const GaussInt&, const GaussInt&) = default;
    // Lexicographic (re, im); used for canonical orderings and dedup.
    friend constexpr auto operator<=>(const GaussInt&, const GaussInt&) = default;
};

constexpr GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
constexpr GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
constexpr GaussInt operator-(GaussInt a) { return {-a.re, -a.im}; }
constexpr GaussInt operator*(GaussInt a, GaussInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

constexpr GaussInt conj(GaussInt z) { return {z.re, -z.im}; }
constexpr GaussInt mul_i(GaussInt z) { return {-z.im, z.re}; }

constexpr std::int64_t norm(GaussInt z) { return z.re * z.re + z.im * z.im; }
constexpr bool is_zero(GaussInt z) { return z.re == 0 && z.im == 0; }
constexpr bool is_unit(GaussInt z) { return norm(z) == 1; }

inline double abs(GaussInt z) { return std::sqrt(static_cast<double>(norm(z))); }

inline std::complex<double> to_complex(GaussInt z) {
    return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

// Unique representative of {z, iz, -z, -iz} with re > 0, im >= 0; 0 -> 0.
constexpr GaussInt canonical_associate(GaussInt z) {
    if (is_zero(z)) return z;
    for (int k = 0; k < 4; ++k) {
        if (z.re > 0 && z.im >= 0) return z;
        z = mul_i(z);
    }
    throw std::logic_error("canonical_associate: unreachable");
}

namespace detail {

// floor(p / q) for q > 0, exact in 128-bit.
constexpr std::int64_t floor_div(__int128 p, __int128 q) {
    __int128 d = p / q;
    if (p % q != 0 && ((p < 0) != (q < 0))) --d;
    return static_cast<std::int64_t>(d);
}

// Nearest integer to p / q (q > 0), ties rounded toward +inf.
constexpr std::int64_t round_half_up(__int128 p, __int128 q) {
    return floor_div(2 * p + q, 2 * q);
}

}  // namespace detail

struct DivRem {
    GaussInt quot;
    GaussInt rem;
};

// Euclidean division: a = q*b + r with norm(r) <= norm(b)/2. The quotient is
// the componentwise nearest Gaussian integer to a/b, ties toward +inf.
constexpr DivRem divrem(GaussInt a, GaussInt b) {
    if (is_zero(b)) throw std::invalid_argument("divrem: division by zero");
    __int128 nre = static_cast<__int128>(a.re) * b.re + static_cast<__int128>(a.im) * b.im;
    __int128 nim = static_cast<__int128>(a.im) * b.re - static_cast<__int128>(a.re) * b.im;
    __int128 nb = norm(b);
    GaussInt q{detail::round_half_up(nre, nb), detail::round_half_up(nim, nb)};
    GaussInt r = a - q * b;
    return {q, r};
}

constexpr GaussInt mod(GaussInt a, GaussInt k) { return divrem(a, k).rem; }

constexpr bool divides(GaussInt d, GaussInt x) { return is_zero(divrem(x, d).rem); }

constexpr bool congruent(GaussInt a, GaussInt b, GaussInt k) { return divides(k, a - b); }

// Exact quotient; throws if d does not divide x.
constexpr GaussInt div_exact(GaussInt x, GaussInt d) {
    auto [q, r] = divrem(x, d);
    if (!is_zero(r)) throw std::invalid_argument("div_exact: not divisible");
    return q;
}

constexpr GaussInt gcd(GaussInt a, GaussInt b) {
    if (is_zero(a) && is_zero(b)) throw std::invalid_argument("gcd(0,0) undefined");
    while (!is_zero(b)) {
        GaussInt r = divrem(a, b).rem;
        a = b;
        b = r;
    }
    return canonical_associate(a);
}

constexpr bool coprime(GaussInt a, GaussInt b) { return is_unit(gcd(a, b)); }

// Representative g mod k with a*g == 1 (mod k), reduced by divrem.
constexpr GaussInt inverse_mod(GaussInt a, GaussInt k) {
    if (is_zero(k)) throw std::invalid_argument("inverse_mod: zero modulus");
    // Extended Euclid on (a, k): maintain x with x*a == r (mod k).
    GaussInt r0 = a, r1 = k;
    GaussInt x0{1, 0}, x1{0, 0};
    while (!is_zero(r1)) {
        auto [q, r] = divrem(r0, r1);
        r0 = r1;
        r1 = r;
        GaussInt x2 = x0 - q * x1;
        x0 = x1;
        x1 = x2;
    }
    if (!is_unit(r0)) throw std::invalid_argument("inverse_mod: arguments not coprime");
    // r0 is a unit: x0*a == r0 (mod k); multiply by r0^{-1} = conj(r0).
    return mod(conj(r0) * x0, k);
}

namespace detail {

constexpr bool is_rational_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

constexpr std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

constexpr std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

// A square root of -1 mod p for a rational prime p == 1 (mod 4).
constexpr std::int64_t sqrt_minus_one(std::int64_t p) {
    for (std::int64_t a = 2; a < p; ++a) {
        std::uint64_t x = powmod_u64(a, (p - 1) / 4, p);
        if (mulmod_u64(x, x, p) == static_cast<std::uint64_t>(p - 1))
            return static_cast<std::int64_t>(x);
    }
    throw std::logic_error("sqrt_minus_one: no witness found");
}

}  // namespace detail

// True iff z is a Gaussian prime (units and 0 excluded).
inline bool is_prime(GaussInt z) {
    std::int64_t n = norm(z);
    if (n < 2) return false;
    if (detail::is_rational_prime(n)) return true;
    GaussInt c = canonical_associate(z);
    return c.im == 0 && c.re % 4 == 3 && detail::is_rational_prime(c.re);
}

struct Factorization {
    GaussInt unit;  // one of 1, -1, i, -i
    std::vector<std::pair<GaussInt, int>> factors;  // canonical primes, exponents
};

inline GaussInt reconstruct(const Factorization& f) {
    GaussInt z = f.unit;
    for (const auto& [p, e] : f.factors)
        for (int j = 0; j < e; ++j) z = z * p;
    return z;
}

// Prime factorization over Z[i]: factor the norm over Z by trial division,
// split each rational prime, divide out.
inline Factorization factor(GaussInt z) {
    if (is_zero(z)) throw std::invalid_argument("factor: zero input");
    Factorization out;
    std::int64_t n = norm(z);
    std::vector<std::int64_t> rational;
    for (std::int64_t d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
        if (n % d == 0) {
            rational.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) rational.push_back(n);

    auto divide_out = [&z, &out](GaussInt p) {
        int e = 0;
        while (divides(p, z)) {
            z = div_exact(z, p);
            ++e;
        }
        if (e > 0) out.factors.emplace_back(p, e);
    };

    for (std::int64_t p : rational) {
        if (p == 2) {
            divide_out(GaussInt{1, 1});
        } else if (p % 4 == 3) {
            divide_out(GaussInt{p, 0});
        } else {
            std::int64_t x = detail::sqrt_minus_one(p);
            GaussInt pi = gcd(GaussInt{p, 0}, GaussInt{x, 1});
            divide_out(pi);
            divide_out(canonical_associate(conj(pi)));
        }
    }
    if (!is_unit(z)) throw std::logic_error("factor: non-unit residue after division");
    out.unit = z;
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

// Number of distinct prime divisors.
inline int omega(GaussInt k) {
    if (is_unit(k)) return 0;
    return static_cast<int>(factor(k).factors.size());
}

// All canonical-associate divisors of r, one per associate class, sorted.
inline std::vector<GaussInt> divisors_non_associate(GaussInt r) {
    if (is_zero(r)) throw std::invalid_argument("divisors_non_associate: zero input");
    Factorization f = factor(r);
    std::vector<GaussInt> divs{GaussInt{1, 0}};
    for (const auto& [p, e] : f.factors) {
        std::vector<GaussInt> next;
        next.reserve(divs.size() * (e + 1));
        for (GaussInt d : divs) {
            GaussInt pe{1, 0};
            for (int j = 0; j <= e; ++j) {
                next.push_back(canonical_associate(d * pe));
                if (j < e) pe = pe * p;
            }
        }
        divs = std::move(next);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

struct ResidueSystem {
    GaussInt modulus;
    std::vector<GaussInt> representatives;  // divrem-reduced, sorted
    std::vector<bool> reduced_mask;         // true where gcd(rep, modulus) = 1
};

// Complete residue system mod k via box enumeration + reduction. O(N(k)^2).
inline ResidueSystem residue_system(GaussInt k, std::int64_t norm_cap = 1 << 14) {
    if (is_zero(k)) throw std::invalid_argument("residue_system: zero modulus");
    std::int64_t n = norm(k);
    if (n > norm_cap) throw budget_error("residue_system: norm above configured cap");
    std::vector<GaussInt> reps;
    reps.reserve(static_cast<std::size_t>(n));
    for (std::int64_t re = 0; re < n; ++re)
        for (std::int64_t im = 0; im < n; ++im)
            reps.push_back(mod(GaussInt{re, im}, k));
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    if (static_cast<std::int64_t>(reps.size()) != n)
        throw std::logic_error("residue_system: representative count != norm");
    ResidueSystem out{k, std::move(reps), {}};
    out.reduced_mask.reserve(out.representatives.size());
    for (GaussInt a : out.representatives)
        out.reduced_mask.push_back(is_zero(a) ? is_unit(k) : coprime(a, k));
    return out;
}

// phi(k) = N(k) * prod_{p|k} (1 - 1/N(p)), computed from the factorization.
inline std::int64_t euler_phi(GaussInt k) {
    if (is_zero(k)) throw std::invalid_argument("euler_phi: zero input");
    std::int64_t phi = norm(k);
    for (const auto& [p, e] : factor(k).factors) {
        (void)e;
        phi -= phi / norm(p);
    }
    return phi;
}

// Unique residue modulo the product of the (pairwise coprime) moduli.
inline GaussInt crt_combine(const std::vector<std::pair<GaussInt, GaussInt>>& congruences) {
    if (congruences.empty()) throw std::invalid_argument("crt_combine: empty input");
    for (std::size_t i = 0; i < congruences.size(); ++i) {
        if (is_zero(congruences[i].second))
            throw std::invalid_argument("crt_combine: zero modulus");
        for (std::size_t j = i + 1; j < congruences.size(); ++j)
            if (!coprime(congruences[i].second, congruences[j].second))
                throw std::invalid_argument("crt_combine: moduli not pairwise coprime");
    }
    GaussInt x = mod(congruences[0].first, congruences[0].second);
    GaussInt m = congruences[0].second;
    for (std::size_t i = 1; i < congruences.size(); ++i) {
        auto [r, k] = congruences[i];
        // x' = x + m * t with t == (r - x) / m (mod k).
        GaussInt t = mod(inverse_mod(m, k) * (r - x), k);
        x = x + m * t;
        m = m * k;
        x = mod(x, m);
    }
    return x;
}

namespace detail {

// Solutions of x^2 == a (mod p^j) by exhaustive search over a residue system.
inline std::vector<GaussInt> sqrt_mod_brute(GaussInt a, GaussInt pj) {
    std::vector<GaussInt> out;
    for (GaussInt x : residue_system(pj).representatives)
        if (congruent(x * x, a, pj)) out.push_back(x);
    return out;
}

// Lift solutions of x^2 == a from mod p^j to mod p^(j+1) by scanning the
// residue system of p over the correction term. Exact at desk scale.
inline std::vector<GaussInt> sqrt_lift_step(const std::vector<GaussInt>& sols, GaussInt a,
                                            GaussInt p, GaussInt pj, GaussInt pj1) {
    std::vector<GaussInt> out;
    ResidueSystem rp = residue_system(p);
    for (GaussInt x : sols) {
        for (GaussInt s : rp.representatives) {
            GaussInt cand = mod(x + pj * s, pj1);
            if (congruent(cand * cand, a, pj1)) out.push_back(cand);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

// All x mod k with x^2 * g == l (mod k), where gcd(k, l) = 1. Empty when
// gcd(g, k) > 1. Prime-by-prime solve with lifting, recombined by CRT; the
// ramified prime 1+i is searched exhaustively up to (1+i)^6, then lifted one
// power at a time with both candidate lifts retained.
inline std::vector<GaussInt> sqrt_solutions(GaussInt l, GaussInt k, GaussInt g) {
    if (is_zero(k)) throw std::invalid_argument("sqrt_solutions: zero modulus");
    if (!coprime(k, l)) throw std::invalid_argument("sqrt_solutions: gcd(k,l) != 1");
    if (is_unit(k)) return {GaussInt{0, 0}};
    if (!coprime(g, k)) return {};
    GaussInt target = mod(inverse_mod(g, k) * l, k);

    Factorization fk = factor(k);
    std::vector<std::pair<std::vector<GaussInt>, GaussInt>> per_prime;  // (solutions, p^a)
    for (const auto& [p, a] : fk.factors) {
        GaussInt pj = p;
        std::vector<GaussInt> sols;
        if (norm(p) == 2) {
            int start = std::min(a, 6);
            GaussInt pa{1, 0};
            for (int j = 0; j < start; ++j) pa = pa * p;
            sols = detail::sqrt_mod_brute(mod(target, pa), pa);
            pj = pa;
            for (int j = start; j < a; ++j) {
                GaussInt pj1 = pj * p;
                sols = detail::sqrt_lift_step(sols, mod(target, pj1), p, pj, pj1);
                pj = pj1;
            }
        } else {
            sols = detail::sqrt_mod_brute(mod(target, p), p);
            for (int j = 1; j < a; ++j) {
                GaussInt pj1 = pj * p;
                sols = detail::sqrt_lift_step(sols, mod(target, pj1), p, pj, pj1);
                pj = pj1;
            }
        }
        if (sols.empty()) return {};
        per_prime.emplace_back(std::move(sols), pj);
    }

    std::vector<GaussInt> out{GaussInt{0, 0}};
    GaussInt m{1, 0};
    for (const auto& [sols, pa] : per_prime) {
        std::vector<GaussInt> next;
        for (GaussInt x : out)
            for (GaussInt s : sols)
                next.push_back(is_unit(m) ? mod(s, pa * m)
                                          : crt_combine({{x, m}, {s, pa}}));
        m = m * pa;
        out = std::move(next);
    }
    for (GaussInt& x : out) x = mod(x, k);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct SquareDecomposition {
    GaussInt f;  // f_t
    GaussInt g;  // g_t = f_t^2 / t, squarefree up to a unit
};

// t * g = f^2 with every exponent of t rounded up to even in f^2.
inline SquareDecomposition square_divisor_decomposition(GaussInt t) {
    if (is_zero(t)) throw std::invalid_argument("square_divisor_decomposition: zero input");
    Factorization ft = factor(t);
    GaussInt f{1, 0};
    for (const auto& [p, v] : ft.factors) {
        int u = (v % 2 == 0) ? v : v + 1;
        for (int j = 0; j < u / 2; ++j) f = f * p;
    }
    GaussInt g = div_exact(f * f, t);
    return {f, g};
}

}  // namespace gsieve
