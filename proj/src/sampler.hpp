#pragma once
// Deterministic 64-bit stream for sampled verification (splitmix64); no
// global state, so results are reproducible run to run.

#include <cstdint>

namespace morita {

struct Sampler {
  std::uint64_t s;
  explicit Sampler(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int below(int n) { return int(next() % std::uint64_t(n)); }
};

}  // namespace morita
