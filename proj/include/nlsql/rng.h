// Copyright 2026 The nlsql Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLSQL_RNG_H_
#define NLSQL_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace nlsql {

// 64-bit FNV-1a.
constexpr std::uint64_t Fnv1a(std::string_view s,
                              std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t MixStream(std::uint64_t a, std::uint64_t b) {
  return SplitMix64(a ^ SplitMix64(b));
}

// Deterministic random stream. Only the engine's raw output is used, so
// results do not depend on the standard library's distribution code.
class RngStream {
 public:
  explicit RngStream(std::uint64_t stream_id)
      : id_(stream_id), engine_(SplitMix64(stream_id)) {}

  std::uint64_t id() const { return id_; }

  // Uniform in [0, 1).
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t Below(std::uint64_t n) {
    // Rejection sampling keeps this unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool Bernoulli(double p) { return p > 0.0 && Uniform() < p; }

 private:
  std::uint64_t id_;
  std::mt19937_64 engine_;
};

}  // namespace nlsql

#endif  // NLSQL_RNG_H_
