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

#include "sipmauth/rng.hpp"

namespace sipmauth {

std::string Rng::hex(std::size_t n_bytes) {
  static const char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(n_bytes * 2);
  std::uint64_t word = 0;
  std::size_t avail = 0;
  for (std::size_t i = 0; i < n_bytes; ++i) {
    if (avail == 0) {
      word = next_u64();
      avail = 8;
    }
    unsigned byte = static_cast<unsigned>(word & 0xffu);
    word >>= 8;
    --avail;
    out.push_back(kHex[byte >> 4]);
    out.push_back(kHex[byte & 0x0fu]);
  }
  return out;
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace sipmauth
