#ifndef CUBINC_RNG_HPP_
#define CUBINC_RNG_HPP_

#include <cstdint>

namespace cubinc {

// SplitMix64. Used instead of <random> distributions so that every seeded
// stream is bit-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), n > 0, by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::uint64_t state_;
};

// Per-trial seed derived from a master seed by counter.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  Rng r(master ^ (0xd1b54a32d192ed03ULL * (counter + 1)));
  return r.next();
}

}  // namespace cubinc

#endif  // CUBINC_RNG_HPP_
