#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace kotaro {

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream path). Different paths give
/// unrelated sequences, so trials and train/test draws never share state.
Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {});

/// Uniform in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace kotaro
