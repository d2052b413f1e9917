#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lso {

// Structural / precondition failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested strategy exists only as a stub.
struct OutOfScope : Error {
    using Error::Error;
};

inline constexpr double kRelTol = 1e-9;

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derived sub-seed for a purpose tag. Fixed mixing, so results are stable.
inline uint64_t derive_seed(uint64_t seed, std::string_view tag, uint64_t index = 0) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return splitmix64(splitmix64(seed ^ h) + index);
}

using Rng = std::mt19937_64;

inline Rng make_rng(uint64_t seed, std::string_view tag, uint64_t index = 0) {
    return Rng(derive_seed(seed, tag, index));
}

inline bool leq_tol(double a, double b) { return a <= b * (1 + kRelTol) + 1e-300; }

}  // namespace lso
