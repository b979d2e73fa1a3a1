#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsieve/expsum.hpp"
#include "gsieve/moduli.hpp"
#include "gsieve/verify.hpp"

namespace gsieve {

// Sweep syntax: a single value "v", a geometric sweep "lo:hi:*k", or an
// arithmetic sweep "lo:hi:+k". Bounds are inclusive.
inline std::vector<std::int64_t> parse_sweep(const std::string& s) {
    auto to_int = [](const std::string& part) {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(part, &pos);
        if (pos != part.size()) throw std::invalid_argument("parse_sweep: bad integer '" + part + "'");
        return v;
    };
    std::size_t c1 = s.find(':');
    if (c1 == std::string::npos) return {to_int(s)};
    std::size_t c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw std::invalid_argument("parse_sweep: expected lo:hi:*k or lo:hi:+k in '" + s + "'");
    std::int64_t lo = to_int(s.substr(0, c1));
    std::int64_t hi = to_int(s.substr(c1 + 1, c2 - c1 - 1));
    std::string step = s.substr(c2 + 1);
    if (step.size() < 2 || (step[0] != '*' && step[0] != '+'))
        throw std::invalid_argument("parse_sweep: step must start with '*' or '+' in '" + s + "'");
    std::int64_t k = to_int(step.substr(1));
    std::vector<std::int64_t> out;
    if (step[0] == '*') {
        if (k < 2) throw std::invalid_argument("parse_sweep: geometric factor must be >= 2");
        if (lo < 1) throw std::invalid_argument("parse_sweep: geometric sweep needs lo >= 1");
        for (std::int64_t v = lo; v <= hi; v *= k) out.push_back(v);
    } else {
        if (k < 1) throw std::invalid_argument("parse_sweep: arithmetic step must be >= 1");
        for (std::int64_t v = lo; v <= hi; v += k) out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("parse_sweep: empty sweep '" + s + "'");
    return out;
}

// N specification: a plain integer, or a rule "pow:<p>,div:<d>" meaning
// N = floor(Q^p / d) (used for prime-moduli scaling laws).
struct NRule {
    bool is_rule = false;
    std::int64_t value = 0;
    double pow = 1.0;
    double div = 1.0;
};

inline NRule parse_n_rule(const std::string& s) {
    NRule r;
    if (s.rfind("pow:", 0) == 0) {
        std::size_t comma = s.find(',');
        if (comma == std::string::npos || s.compare(comma + 1, 4, "div:") != 0)
            throw std::invalid_argument("parse_n_rule: expected pow:<p>,div:<d> in '" + s + "'");
        r.is_rule = true;
        r.pow = std::stod(s.substr(4, comma - 4));
        r.div = std::stod(s.substr(comma + 5));
        if (!(r.div > 0)) throw std::invalid_argument("parse_n_rule: div must be positive");
        return r;
    }
    std::size_t pos = 0;
    r.value = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("parse_n_rule: bad N '" + s + "'");
    return r;
}

inline std::int64_t apply_n_rule(const NRule& r, std::int64_t Q) {
    if (!r.is_rule) return r.value;
    double v = std::pow(static_cast<double>(Q), r.pow) / r.div;
    if (!(v >= 1)) throw std::invalid_argument("apply_n_rule: rule yields N < 1");
    return static_cast<std::int64_t>(v);
}

inline SetKind parse_set_kind(const std::string& s) {
    if (s == "all") return SetKind::all;
    if (s == "squares") return SetKind::squares;
    if (s == "primes") return SetKind::primes;
    if (s == "custom") return SetKind::custom;
    throw std::invalid_argument("unknown set kind '" + s + "'");
}

inline SeqKind parse_seq_kind(const std::string& s) {
    if (s == "ones") return SeqKind::ones;
    if (s == "random_phase") return SeqKind::random_phase;
    if (s == "random_gaussian") return SeqKind::random_gaussian;
    if (s == "spike") return SeqKind::spike;
    throw std::invalid_argument("unknown sequence kind '" + s + "'");
}

inline BoundName parse_bound_name(const std::string& s) {
    if (s == "huxley") return BoundName::huxley;
    if (s == "trivial") return BoundName::trivial;
    if (s == "thm1_sampled") return BoundName::thm1_sampled;
    if (s == "thm2") return BoundName::thm2;
    if (s == "thm3") return BoundName::thm3;
    if (s == "thm4") return BoundName::thm4;
    throw std::invalid_argument("unknown bound '" + s + "'");
}

inline std::vector<BoundName> parse_bounds_list(const std::string& s) {
    std::vector<BoundName> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string item = s.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
        if (item.empty()) throw std::invalid_argument("parse_bounds_list: empty item");
        out.push_back(parse_bound_name(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("parse_bounds_list: no bounds given");
    return out;
}

}  // namespace gsieve
