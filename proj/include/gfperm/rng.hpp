#pragma once

#include <cstdint>

namespace gfperm {

// splitmix64. Deterministic across platforms and standard libraries, which
// <random> distributions are not; seeded reports depend on that.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform on [0, n), n >= 1
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t zone = n * (~0ull / n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= zone);
    return v % n;
  }

  bool coin() { return next() & 1; }

 private:
  std::uint64_t state_;
};

}  // namespace gfperm
