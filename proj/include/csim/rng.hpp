#ifndef CSIM_RNG_HPP
#define CSIM_RNG_HPP

#include <cmath>
#include <cstdint>

namespace csim {

// splitmix64: tiny, fully specified PRNG. Used everywhere instead of
// <random> distributions so that generated traces and evolution runs are
// bit-identical across standard library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed = 0) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). bound must be > 0. Modulo bias is irrelevant at
  // the table sizes used here.
  uint64_t below(uint64_t bound) { return next() % bound; }

  // Uniform real in [0, 1).
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (deterministic, portable).
  double gaussian() {
    double u1 = real();
    double u2 = real();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  uint64_t state() const { return state_; }
  void set_state(uint64_t s) { state_ = s; }

 private:
  uint64_t state_;
};

inline uint64_t hash64(uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Multiply-shift PC signature: top `bits` of the hashed value.
inline uint64_t pc_signature(uint64_t pc, unsigned bits) {
  if (bits == 0) return 0;
  return (pc * 0x9E3779B97F4A7C15ull) >> (64u - bits);
}

// FNV-1a over a byte range; used for checkpoint checksums and memo keys.
inline uint64_t fnv1a(const void* data, size_t n, uint64_t h = 0xCBF29CE484222325ull) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace csim

#endif
