#pragma once

#include <cstdint>
#include <random>

namespace rwce {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream derivation: trial k is reproducible in isolation from
// the root seed alone. Walk and environment randomness use distinct lanes so
// an environment realization can be replayed against a different walk.
class RngStream {
 public:
  RngStream(std::uint64_t root_seed, std::uint64_t stream_id)
      : engine_(splitmix64(splitmix64(root_seed) ^ splitmix64(stream_id + 1))) {}

  double uniform() { return dist_(engine_); }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> dist_{0.0, 1.0};
};

inline RngStream walk_stream(std::uint64_t root_seed, std::uint64_t trial) {
  return RngStream(root_seed, 2 * trial);
}

inline RngStream env_stream(std::uint64_t root_seed, std::uint64_t trial) {
  return RngStream(root_seed, 2 * trial + 1);
}

}  // namespace rwce
