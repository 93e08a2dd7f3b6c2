//
// Project MolSeek - Copyright 2026 MolSeek Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLSEEK_RNG_HPP_
#define MOLSEEK_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace molseek {

// Deterministic PRNG used everywhere randomness is contractual
// (rendering, perturbation, corpus sampling). std::mt19937 engines are
// portable but the standard distributions are not, so the few
// distributions we need are implemented here: identical streams on
// every platform and compiler.
class Rng {
public:
  explicit Rng(std::uint64_t seed): state_(splitmix(seed)) {
    if (state_ == 0)
      state_ = 0x9e3779b97f4a7c15ULL;
  }

  // xorshift64* core.
  std::uint64_t next_u64() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dULL;
  }

  // Uniform in [0, n). Rejection-free (modulo bias is irrelevant at
  // 64-bit state vs. small n, and determinism matters more here).
  std::uint64_t next_below(std::uint64_t n) {
    return n == 0 ? 0 : next_u64() % n;
  }

  int next_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_range(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Standard normal via Box-Muller; one value per call, cached pair.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  bool next_bool() { return (next_u64() & 1ULL) != 0; }

  template <typename T>
  void shuffle(std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// FNV-1a, used for per-record seed derivation and run-summary digests.
inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t seed = 0xcbf29ce484222325ULL) {
  std::uint64_t h = seed;
  for (const char c: bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Derivation rule for per-record seeds: hash of the global seed and the
// record id, as recorded in perturbation/corpus manifests.
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view record_id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (int i = 0; i < 8; ++i) {
    h ^= (global_seed >> (8 * i)) & 0xffULL;
    h *= 0x100000001b3ULL;
  }
  return fnv1a64(record_id, h);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (int i = 0; i < 8; ++i) {
    h ^= (base >> (8 * i)) & 0xffULL;
    h *= 0x100000001b3ULL;
  }
  for (int i = 0; i < 8; ++i) {
    h ^= (index >> (8 * i)) & 0xffULL;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace molseek

#endif  // MOLSEEK_RNG_HPP_
