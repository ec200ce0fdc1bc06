#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace copos {

// splitmix64: tiny, fast, and good enough for sampling test corpora.
// Every randomized routine takes an explicit Rng so parallel callers can
// derive independent streams with seed_for and stay reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // {lo, ..., hi} inclusive; span is tiny everywhere we use it, so the
  // modulo bias is far below anything observable.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Box-Muller; always consumes exactly two draws so streams stay aligned.
  double gaussian() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

 private:
  std::uint64_t state_;
};

namespace detail {
inline std::uint64_t splitmix_once(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}
}  // namespace detail

// Derives the seed of an independent sub-stream. `tag` separates call sites,
// `index` separates tasks of one parallel sweep.
inline std::uint64_t seed_for(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
  std::uint64_t h = detail::splitmix_once(seed ^ detail::fnv1a(tag));
  return detail::splitmix_once(h ^ (index * 0xD1B54A32D192ED03ULL));
}

}  // namespace copos
