// rng.hpp
// Seeded random source for samplers and synthetic data. All randomness in the
// library flows through an explicit Rng instance; there is no ambient state.

#pragma once

#include <cstdint>
#include <random>

namespace copsig {

// Deterministic across platforms: raw engine output is mapped to doubles by
// hand instead of going through std::uniform_real_distribution, whose output
// sequence is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on the open interval (0, 1); never returns an exact 0 or 1,
    // so quantile transforms stay finite.
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via inverse-CDF transform (see special_functions.hpp).
    double normal();

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace copsig
