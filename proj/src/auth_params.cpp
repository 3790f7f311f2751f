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

#include "sipmauth/auth_params.hpp"

#include <algorithm>
#include <cctype>

namespace sipmauth {

namespace {

char ascii_lower(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
  return out;
}

bool is_blank(char c) noexcept { return c == ' ' || c == '\t'; }

bool is_hex_lower(std::string_view s, std::size_t want_len) noexcept {
  if (s.size() != want_len) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
  });
}

// Splits a comma-separated qop offer like "auth,auth-int" into lowercased
// tokens, dropping empty segments.
std::vector<std::string> split_qop(std::string_view value) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto end = value.find(',', start);
    if (end == std::string_view::npos) end = value.size();
    std::string_view piece = value.substr(start, end - start);
    while (!piece.empty() && is_blank(piece.front())) piece.remove_prefix(1);
    while (!piece.empty() && is_blank(piece.back())) piece.remove_suffix(1);
    if (!piece.empty()) tokens.push_back(to_lower(piece));
    start = end + 1;
  }
  return tokens;
}

void append_quoted(std::string& out, std::string_view value) {
  out += '"';
  for (char c : value) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

void append_param(std::string& out, bool& first, std::string_view name, std::string_view value,
                  bool quoted) {
  if (!first) out += ", ";
  first = false;
  out += name;
  out += '=';
  if (quoted) {
    append_quoted(out, value);
  } else {
    out += value;
  }
}

}  // namespace

std::string_view to_header_name(AuthHeader header) noexcept {
  switch (header) {
    case AuthHeader::WwwAuthenticate: return "WWW-Authenticate";
    case AuthHeader::Authorization: return "Authorization";
    case AuthHeader::AuthenticationInfo: return "Authentication-Info";
  }
  return "Authorization";
}

AuthParams parse_auth_params(std::string_view header_value) {
  std::string_view rest = header_value;
  while (!rest.empty() && is_blank(rest.front())) rest.remove_prefix(1);

  std::size_t scheme_len = 0;
  while (scheme_len < rest.size() && !is_blank(rest[scheme_len])) ++scheme_len;
  if (to_lower(rest.substr(0, scheme_len)) != "digest") {
    throw ParseError(ParseErrc::NotDigestScheme, 0,
                     "scheme '" + std::string(rest.substr(0, scheme_len)) + "'");
  }
  rest.remove_prefix(scheme_len);

  AuthParams params;
  std::vector<std::string> seen;  // lowercased names, for duplicate detection
  std::size_t param_index = 0;

  while (true) {
    while (!rest.empty() && (is_blank(rest.front()) || rest.front() == ',')) rest.remove_prefix(1);
    if (rest.empty()) break;

    std::size_t name_len = 0;
    while (name_len < rest.size() && rest[name_len] != '=' && rest[name_len] != ',' &&
           !is_blank(rest[name_len])) {
      ++name_len;
    }
    std::string name(rest.substr(0, name_len));
    rest.remove_prefix(name_len);
    while (!rest.empty() && is_blank(rest.front())) rest.remove_prefix(1);
    if (name.empty() || rest.empty() || rest.front() != '=') {
      throw ParseError(ParseErrc::MalformedParameter, param_index,
                       name.empty() ? "empty parameter name" : "parameter '" + name + "' has no value");
    }
    rest.remove_prefix(1);  // '='
    while (!rest.empty() && is_blank(rest.front())) rest.remove_prefix(1);

    std::string value;
    if (!rest.empty() && rest.front() == '"') {
      rest.remove_prefix(1);
      bool closed = false;
      while (!rest.empty()) {
        char c = rest.front();
        rest.remove_prefix(1);
        if (c == '\\' && !rest.empty()) {
          value += rest.front();
          rest.remove_prefix(1);
        } else if (c == '"') {
          closed = true;
          break;
        } else {
          value += c;
        }
      }
      if (!closed) {
        throw ParseError(ParseErrc::UnterminatedQuote, param_index,
                         "parameter '" + name + "'");
      }
    } else {
      std::size_t value_len = 0;
      while (value_len < rest.size() && rest[value_len] != ',' && !is_blank(rest[value_len])) {
        ++value_len;
      }
      value = std::string(rest.substr(0, value_len));
      rest.remove_prefix(value_len);
    }

    std::string key = to_lower(name);
    if (key == "ip") key = "serverip";  // alias
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      throw ParseError(ParseErrc::DuplicateParameter, param_index, "parameter '" + name + "'");
    }
    seen.push_back(key);

    if (key == "username") {
      params.username = value;
    } else if (key == "realm") {
      params.realm = value;
    } else if (key == "nonce") {
      params.nonce = to_lower(value);
    } else if (key == "qop") {
      params.qop = split_qop(value);
    } else if (key == "nc") {
      std::string hex = to_lower(value);
      if (is_hex_lower(hex, 8)) {
        params.nc = hex;
      } else {
        params.extra.push_back(Header{std::move(name), std::move(value)});
      }
    } else if (key == "cnonce") {
      params.cnonce = to_lower(value);
    } else if (key == "serverip") {
      params.serverip = value;
    } else if (key == "uri") {
      params.uri = value;
    } else if (key == "response") {
      std::string hex = to_lower(value);
      if (is_hex_lower(hex, 32)) {
        params.response = hex;
      } else {
        params.extra.push_back(Header{std::move(name), std::move(value)});
      }
    } else if (key == "algorithm") {
      params.algorithm = value;
    } else {
      params.extra.push_back(Header{std::move(name), std::move(value)});
    }
    ++param_index;
  }

  return params;
}

std::string serialize_auth_params(const AuthParams& params, AuthHeader header) {
  if (!params.realm && header != AuthHeader::AuthenticationInfo) {
    throw ParseError(ParseErrc::MissingRealm, 0,
                     std::string(to_header_name(header)) + " requires a realm");
  }

  std::string out = "Digest ";
  bool first = true;
  if (params.realm) append_param(out, first, "realm", *params.realm, true);
  if (!params.qop.empty()) {
    std::string joined;
    for (const auto& token : params.qop) {
      if (!joined.empty()) joined += ',';
      joined += token;
    }
    append_param(out, first, "qop", joined, true);
  }
  if (params.serverip) append_param(out, first, "serverip", *params.serverip, true);
  if (params.nonce) append_param(out, first, "nonce", *params.nonce, true);
  if (params.nc) append_param(out, first, "nc", *params.nc, false);
  if (params.username) append_param(out, first, "username", *params.username, true);
  if (params.uri) append_param(out, first, "uri", *params.uri, true);
  if (params.cnonce) append_param(out, first, "cnonce", *params.cnonce, true);
  if (params.response) append_param(out, first, "response", *params.response, true);
  if (params.algorithm) append_param(out, first, "algorithm", *params.algorithm, false);
  for (const auto& pair : params.extra) {
    append_param(out, first, pair.name, pair.value, true);
  }
  return out;
}

}  // namespace sipmauth
