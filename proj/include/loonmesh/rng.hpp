#pragma once

#include <cstdint>
#include <random>

namespace loonmesh {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Per-event random stream: mt19937_64 keyed by (seed, event time, rank among
// events sharing that time), so inserting events at other times leaves a
// given event's draws untouched.
class EventStream {
 public:
  EventStream(std::uint64_t seed, std::int64_t time, std::uint64_t rank)
      : gen_(splitmix64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(time)) ^
                        rank)) {}

  std::uint64_t next() { return gen_(); }

  // 53-bit uniform in [0, 1); bit-stable across platforms.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace loonmesh
