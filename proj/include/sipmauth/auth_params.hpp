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

#ifndef SIPMAUTH_AUTH_PARAMS_HPP
#define SIPMAUTH_AUTH_PARAMS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sipmauth/errors.hpp"
#include "sipmauth/message.hpp"

namespace sipmauth {

/// Parameter set of one Digest challenge, credentials, or echo header.
///
/// Hex-valued parameters (nonce, nc, cnonce, response) are lowercased at
/// parse time. A parsed nc is always exactly 8 hex digits and a parsed
/// response exactly 32; wire values of the wrong shape are kept verbatim in
/// `extra` instead, so the typed fields always satisfy their invariants and
/// nothing is lost across a round-trip.
struct AuthParams {
  std::optional<std::string> username;
  std::optional<std::string> realm;
  std::optional<std::string> nonce;
  std::vector<std::string> qop;  // empty means absent
  std::optional<std::string> nc;
  std::optional<std::string> cnonce;
  std::optional<std::string> serverip;
  std::optional<std::string> uri;
  std::optional<std::string> response;
  std::optional<std::string> algorithm;  // treated as "MD5" when absent
  std::vector<Header> extra;             // unrecognized pairs, order preserved

  bool operator==(const AuthParams&) const = default;
};

enum class AuthHeader { WwwAuthenticate, Authorization, AuthenticationInfo };

std::string_view to_header_name(AuthHeader header) noexcept;

/// Parses `Digest name=value, ...`. The scheme token is matched
/// case-insensitively and `ip` is accepted as an alias of `serverip`.
/// Throws ParseError (NotDigestScheme, DuplicateParameter, UnterminatedQuote,
/// MalformedParameter) with the index of the offending parameter.
AuthParams parse_auth_params(std::string_view header_value);

/// Canonical serialization: scheme, then present fields in the order
/// realm, qop, serverip, nonce, nc, username, uri, cnonce, response,
/// algorithm, extras. nc and algorithm are bare tokens, everything else is
/// quoted. Throws ParseError(MissingRealm) for the two header kinds that
/// require a realm.
std::string serialize_auth_params(const AuthParams& params, AuthHeader header);

}  // namespace sipmauth

#endif  // SIPMAUTH_AUTH_PARAMS_HPP
