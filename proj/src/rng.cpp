#include "lcroots/rng.hpp"

#include <cmath>

namespace lcroots {

Engine make_stream(std::uint64_t master_seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Engine(seq);
}

double uniform_open_closed(Engine& rng) {
  // 53 random mantissa bits mapped onto {1, ..., 2^53} / 2^53.
  const std::uint64_t bits = rng() >> 11;
  return static_cast<double>(bits + 1) * 0x1.0p-53;
}

double standard_exponential(Engine& rng) { return -std::log(uniform_open_closed(rng)); }

}  // namespace lcroots
