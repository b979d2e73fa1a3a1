#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace gsieve {

// Thrown when a configured desk-scale cap would be exceeded.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Deterministic uniform double in [0,1) from a 64-bit generator state.
// Avoids std::uniform_real_distribution, whose output sequence is
// implementation defined.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Kahan compensated accumulator.
struct Kahan {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace gsieve
