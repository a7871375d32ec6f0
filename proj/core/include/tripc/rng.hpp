// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "tripc/linalg.hpp"

namespace tripc {

/// SplitMix64 stream. This exact generator is part of the external contract:
/// fixtures are reproducible across implementations from the 64-bit seed.
///
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
///
/// uniform() maps the top 53 bits to [0,1); gauss() is Box-Muller on two
/// uniforms (pair cached).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform(); // [0, 1)
    double gauss();
    Complex cgauss(); // (gauss + i gauss) / sqrt(2)
    int uniform_int(int lo, int hi); // inclusive bounds

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// iid standard complex Gaussian entries.
CMatrix ginibre(SplitMix64& rng, int rows, int cols);

/// Haar-like unitary from the QR of a Ginibre matrix, phases fixed so the
/// result is deterministic.
CMatrix random_unitary(SplitMix64& rng, int n);

} // namespace tripc
