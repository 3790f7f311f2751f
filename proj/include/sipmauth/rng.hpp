/*
 *
 *    Copyright (c) 2026 The sipmauth Authors
 *    All rights reserved.
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

#ifndef SIPMAUTH_RNG_HPP
#define SIPMAUTH_RNG_HPP

#include <cstdint>
#include <random>
#include <string>

namespace sipmauth {

/// Deterministic randomness source. All protocol randomness (nonces, cnonces,
/// tags, branches) flows through one of these, so a seed pins an entire run.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// n_bytes of randomness as 2*n_bytes lowercase hex digits.
  std::string hex(std::size_t n_bytes);

  /// Stateless sub-seed derivation (splitmix64 finalizer over seed ^ index
  /// stream). Identical regardless of which worker asks, which keeps
  /// sharded runs equal to sequential ones.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) noexcept;

private:
  std::mt19937_64 gen_;
};

}  // namespace sipmauth

#endif  // SIPMAUTH_RNG_HPP
