#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace idglow {

// 64-bit FNV-1a, used for stable seed derivation and content hashing.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64(const void* data, std::size_t size,
                      std::uint64_t basis = 14695981039346656037ull);

std::uint64_t splitmix64(std::uint64_t x);

// Stable sub-seed: mixes a base seed, a purpose tag, and an index.
// Distinct tags give statistically independent streams for one base seed.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                          std::uint64_t index = 0);

// Deterministic generator. All distributions are implemented on top of the
// raw 64-bit stream so output does not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller
  double normal();

  std::vector<double> normal_vec(std::size_t n);

  // unbiased integer in [0, n), rejection sampled
  std::size_t index(std::size_t n);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace idglow
