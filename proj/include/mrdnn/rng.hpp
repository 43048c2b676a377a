#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

// Deterministic randomness. mt19937_64 has a standardized bit stream, but
// the std:: distributions do not, so the distributions here are written
// out explicitly. Same seed, same platform-independent sequence.

namespace mrdnn::rng {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent sub-seed from (seed, stream). Used to fan one
// user-facing seed out into init/data/shuffle/... streams.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64_next(s);
  s = a ^ stream;
  return splitmix64_next(s);
}

class Engine {
 public:
  explicit Engine(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (cosine branch only).
  double gaussian() {
    double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Uniform integer on [0, n), rejection-sampled so it is unbiased.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t bound = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= bound);
    return r % n;
  }

 private:
  std::mt19937_64 gen_;
};

// Fisher-Yates.
template <typename T>
void shuffle(std::vector<T>& v, Engine& e) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(e.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace mrdnn::rng
