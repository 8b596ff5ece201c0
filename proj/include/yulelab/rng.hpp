// Copyright 2026 The yulelab Authors
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

// Reproducible random numbers.
//
// The generator is xoshiro256** (Blackman & Vigna, 2018) with its 256-bit
// state filled from SplitMix64. Every draw used by the simulators goes
// through the members below, never through <random> distributions, whose
// algorithms are implementation-defined. A run is therefore a pure function
// of (seed, stream index) on any platform with IEEE-754 doubles.
//
// Streams: Rng::Stream(seed, index, lane) hashes the three words through
// SplitMix64 finalizers into an independent seed. Experiments key streams
// by replica index (never by worker), so results do not depend on the
// number of threads.

#ifndef YULELAB_RNG_HPP_
#define YULELAB_RNG_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace yulelab {

inline constexpr std::uint64_t SplitMix64Mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += 0x9E3779B97F4A7C15ULL;
      word = SplitMix64Mix(sm);
    }
  }

  // Independent generator for stream `index` (and optional `lane`, used when
  // one replica needs several unrelated streams) under a master seed.
  static Rng Stream(std::uint64_t seed, std::uint64_t index,
                    std::uint64_t lane = 0) {
    std::uint64_t h = SplitMix64Mix(seed ^ 0x6A09E667F3BCC908ULL);
    h = SplitMix64Mix(h ^ (index + 0x9E3779B97F4A7C15ULL));
    h = SplitMix64Mix(h ^ (lane * 0xD1B54A32D192ED03ULL + 1));
    return Rng(h);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    const std::uint64_t result = Rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = Rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1).
  double UniformOpen() {
    return (static_cast<double>((*this)() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Uniform integer on [0, bound); Lemire's multiply-shift with rejection.
  std::uint64_t Below(std::uint64_t bound) {
    unsigned __int128 product =
        static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  // Exponential waiting time with the given rate, by inversion.
  double Exponential(double rate) { return -std::log(UniformOpen()) / rate; }

 private:
  static constexpr std::uint64_t Rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace yulelab

#endif  // YULELAB_RNG_HPP_
