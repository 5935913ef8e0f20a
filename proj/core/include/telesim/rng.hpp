// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

// Deterministic stream derivation.  Every random decision in a run is drawn
// from an engine seeded by (master seed, stream id, substream id), so results
// do not depend on how work is split across threads.

namespace telesim {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t substream = 0) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s ^= stream * 0xd1342543de82ef95ULL;
  std::uint64_t b = splitmix64(s);
  s ^= substream * 0xaf251af3b0f025b5ULL;
  std::uint64_t c = splitmix64(s);
  return a ^ (b + 0x9e3779b97f4a7c15ULL) ^ (c << 1);
}

inline std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t stream,
                                   std::uint64_t substream = 0) {
  return std::mt19937_64(derive_seed(master, stream, substream));
}

// Stream ids used by the run pipeline.  Trial streams add the label index;
// trial substreams are the attempt index.
namespace stream_id {
inline constexpr std::uint64_t kTrials = 0x100;
inline constexpr std::uint64_t kTomography = 0x200;
inline constexpr std::uint64_t kBootstrapTrials = 0x300;
inline constexpr std::uint64_t kBootstrapCounts = 0x400;
inline constexpr std::uint64_t kJitter = 0x500;
}  // namespace stream_id

}  // namespace telesim
