// Copyright 2026 The sopm Authors.
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

#ifndef SOPM_RANDOM_H_
#define SOPM_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

namespace sopm {

// Source of uniform variates used by the instance generator. The default
// implementation derives both variates from raw mt19937_64 output so that a
// seed yields the same stream with every standard library.
class RandomStream {
 public:
  virtual ~RandomStream() = default;

  // Uniform on the unit interval; implementations may or may not reach 1.
  virtual double Uniform01() = 0;

  // Uniform in {0, ..., n - 1}; n must be positive.
  virtual std::size_t UniformIndex(std::size_t n) = 0;

  // Uniform in [lo, hi]; returns lo exactly when lo == hi.
  double Uniform(double lo, double hi) {
    if (hi <= lo) return lo;
    return lo + Uniform01() * (hi - lo);
  }
};

class SeededStream final : public RandomStream {
 public:
  explicit SeededStream(std::uint64_t seed) : engine_(seed) {}

  double Uniform01() override {
    // 53 random bits scaled onto [0, 1].
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::size_t UniformIndex(std::size_t n) override {
    const std::uint64_t bound = n;
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return static_cast<std::size_t>(v % bound);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sopm

#endif  // SOPM_RANDOM_H_
