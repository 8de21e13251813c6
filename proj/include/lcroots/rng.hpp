#pragma once

#include <cstdint>
#include <random>

namespace lcroots {

/// 64-bit Mersenne Twister; its output sequence is fixed by the C++ standard,
/// so streams replay identically across platforms.
using Engine = std::mt19937_64;

/// Independent stream for replicate `stream` of a run seeded with `master_seed`.
/// The stream depends only on the pair, never on scheduling.
Engine make_stream(std::uint64_t master_seed, std::uint64_t stream);

/// Uniform draw from (0, 1]; never returns 0.
double uniform_open_closed(Engine& rng);

/// Standard exponential via -log(U) with U in (0, 1].
double standard_exponential(Engine& rng);

}  // namespace lcroots
