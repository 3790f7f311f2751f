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

#ifndef SIPMAUTH_DIGEST_HPP
#define SIPMAUTH_DIGEST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sipmauth/errors.hpp"

namespace sipmauth {

/// A 32-character lowercase hexadecimal MD5 digest. The constructor enforces
/// the shape, so any HexDigest in flight is well-formed.
class HexDigest {
public:
  HexDigest() = default;  // empty; only assignment targets should stay this way
  explicit HexDigest(std::string hex);

  const std::string& str() const noexcept { return hex_; }
  bool empty() const noexcept { return hex_.empty(); }

  /// Timing-safe equality (see digest_equal).
  friend bool operator==(const HexDigest& a, const HexDigest& b) noexcept;

private:
  std::string hex_;
};

/// Counts hash invocations for instrumented runs. Explicitly scoped: callers
/// create one per actor or per test and pass it down; there is no global.
struct HashCounter {
  std::uint64_t calls = 0;
};

/// MD5 of raw bytes, rendered as 32 lowercase hex digits. Every digest in
/// this library funnels through here, which is what makes the instrumented
/// call counts exact.
HexDigest md5_hex(std::string_view data, HashCounter* counter = nullptr);

/// H(A1) = MD5(username ":" realm ":" password).
HexDigest h_a1(std::string_view username, std::string_view realm, std::string_view password,
               HashCounter* counter = nullptr);

/// H(A2) = MD5(method ":" digest_uri). The method token is used verbatim.
HexDigest h_a2(std::string_view method, std::string_view digest_uri,
               HashCounter* counter = nullptr);

/// response = MD5(H(A1) ":" nonce ":" H(A2)), the pre-qop formula.
HexDigest response_legacy(const HexDigest& ha1, std::string_view nonce, const HexDigest& ha2,
                          HashCounter* counter = nullptr);

/// Everything that feeds one qop-style request digest.
struct DigestInputs {
  std::string username;
  std::string realm;
  std::string password;
  std::string method;
  std::string digest_uri;
  std::string nonce;
  std::optional<std::string> nc;
  std::optional<std::string> cnonce;  // absent selects the cnonce-less variant
  std::optional<std::string> qop;     // "auth"; "auth-int" is not computable here
};

/// Request digest with qop:
///   with cnonce:    MD5(H(A1) ":" nonce ":" nc ":" cnonce ":" qop ":" H(A2))
///   without cnonce: MD5(H(A1) ":" nonce ":" nc ":" qop ":" H(A2))
/// Consumes exactly 3 md5_hex calls (H(A1), H(A2), final KD).
/// Throws DigestError: MissingNc when qop is present without nc,
/// UnsupportedQop for "auth-int".
HexDigest response_qop(const DigestInputs& inputs, HashCounter* counter = nullptr);

/// Zero-padded lowercase hex, width 8. Valid for 1 <= counter <= 2^32 - 1;
/// throws DigestError(NcOutOfRange) otherwise.
std::string format_nc(std::uint64_t counter);

/// Byte equality with comparison time independent of the first differing
/// position. Both inputs must be well-formed digests.
bool digest_equal(const HexDigest& a, const HexDigest& b) noexcept;

}  // namespace sipmauth

#endif  // SIPMAUTH_DIGEST_HPP
