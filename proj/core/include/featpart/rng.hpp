// Copyright 2026 The featpart Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FEATPART_RNG_HPP_
#define FEATPART_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace featpart {

// Reproducible random source. The engine (std::mt19937_64) is bit-exact by
// the C++ standard, but the standard distributions are not, so bounded draws
// and shuffles are implemented here. The algorithm name is written into every
// output that depends on a draw; bump it whenever the draw sequence changes.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+lemire-fy/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t Below(std::uint64_t bound);

  // Uniform double in [0, 1) built from the top 53 bits.
  double Uniform01() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; deterministic across platforms up to libm.
  double Normal();

  template <typename T>
  void Shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(Below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from a base seed and a purpose tag.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream);

}  // namespace featpart

#endif  // FEATPART_RNG_HPP_
