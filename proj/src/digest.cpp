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

#include "sipmauth/digest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>

namespace sipmauth {

namespace {

bool is_hex_digest(std::string_view s) noexcept {
  if (s.size() != 32) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
  });
}

}  // namespace

HexDigest::HexDigest(std::string hex) : hex_(std::move(hex)) {
  if (!is_hex_digest(hex_)) {
    throw DigestError(DigestErrc::BadDigestShape,
                      "expected 32 lowercase hex digits, got '" + hex_ + "'");
  }
}

bool operator==(const HexDigest& a, const HexDigest& b) noexcept { return digest_equal(a, b); }

HexDigest md5_hex(std::string_view data, HashCounter* counter) {
  if (counter != nullptr) ++counter->calls;

  std::array<unsigned char, EVP_MAX_MD_SIZE> raw{};
  unsigned int raw_len = 0;
  EVP_Digest(data.data(), data.size(), raw.data(), &raw_len, EVP_md5(), nullptr);

  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex(raw_len * 2, '0');
  for (unsigned int i = 0; i < raw_len; ++i) {
    hex[2 * i] = kHex[raw[i] >> 4];
    hex[2 * i + 1] = kHex[raw[i] & 0x0f];
  }
  return HexDigest(std::move(hex));
}

HexDigest h_a1(std::string_view username, std::string_view realm, std::string_view password,
               HashCounter* counter) {
  std::string joined;
  joined.reserve(username.size() + realm.size() + password.size() + 2);
  joined.append(username).append(1, ':').append(realm).append(1, ':').append(password);
  return md5_hex(joined, counter);
}

HexDigest h_a2(std::string_view method, std::string_view digest_uri, HashCounter* counter) {
  std::string joined;
  joined.reserve(method.size() + digest_uri.size() + 1);
  joined.append(method).append(1, ':').append(digest_uri);
  return md5_hex(joined, counter);
}

HexDigest response_legacy(const HexDigest& ha1, std::string_view nonce, const HexDigest& ha2,
                          HashCounter* counter) {
  std::string joined;
  joined.reserve(ha1.str().size() + nonce.size() + ha2.str().size() + 2);
  joined.append(ha1.str()).append(1, ':').append(nonce).append(1, ':').append(ha2.str());
  return md5_hex(joined, counter);
}

HexDigest response_qop(const DigestInputs& inputs, HashCounter* counter) {
  const std::string qop = inputs.qop.value_or("auth");
  if (qop == "auth-int") {
    throw DigestError(DigestErrc::UnsupportedQop, "auth-int body digests are not computed");
  }
  if (qop != "auth") {
    throw DigestError(DigestErrc::UnsupportedQop, "qop '" + qop + "'");
  }
  if (!inputs.nc) {
    throw DigestError(DigestErrc::MissingNc, "qop-style digest requires an nc value");
  }

  const HexDigest ha1 = h_a1(inputs.username, inputs.realm, inputs.password, counter);
  const HexDigest ha2 = h_a2(inputs.method, inputs.digest_uri, counter);

  std::string kd;
  kd.reserve(2 * 32 + inputs.nonce.size() + 32);
  kd.append(ha1.str()).append(1, ':').append(inputs.nonce).append(1, ':').append(*inputs.nc);
  if (inputs.cnonce) {
    kd.append(1, ':').append(*inputs.cnonce);
  }
  kd.append(1, ':').append(qop).append(1, ':').append(ha2.str());
  return md5_hex(kd, counter);
}

std::string format_nc(std::uint64_t counter) {
  if (counter == 0 || counter > 0xffffffffULL) {
    throw DigestError(DigestErrc::NcOutOfRange, "nc counter " + std::to_string(counter));
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(8, '0');
  for (int i = 7; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[counter & 0x0f];
    counter >>= 4;
  }
  return out;
}

bool digest_equal(const HexDigest& a, const HexDigest& b) noexcept {
  const std::string& lhs = a.str();
  const std::string& rhs = b.str();
  if (lhs.size() != rhs.size()) return false;
  volatile unsigned char acc = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    acc = static_cast<unsigned char>(acc | (lhs[i] ^ rhs[i]));
  }
  return acc == 0;
}

}  // namespace sipmauth
