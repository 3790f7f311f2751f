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

#ifndef SIPMAUTH_MESSAGE_HPP
#define SIPMAUTH_MESSAGE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sipmauth/errors.hpp"

namespace sipmauth {

enum class Method { Invite, Ack, Bye, Cancel, Options, Register };

std::string_view to_token(Method m) noexcept;
std::optional<Method> method_from_token(std::string_view token) noexcept;

struct Header {
  std::string name;   // original casing preserved
  std::string value;  // no leading/trailing blanks, no CRLF
  bool operator==(const Header&) const = default;
};

/// One SIP request or response. Values are plain data; all operations on
/// them are free functions. Header names compare case-insensitively but the
/// stored casing is what serialization emits.
struct SipMessage {
  enum class Kind { Request, Response };

  Kind kind = Kind::Request;
  Method method = Method::Invite;  // requests only
  std::string request_uri;         // requests only
  int status = 0;                  // responses only, 100..699
  std::string reason;              // responses only, may be empty
  std::vector<Header> headers;
  std::string body;

  static SipMessage request(Method method, std::string uri);
  static SipMessage response(int status, std::string reason);

  bool is_request() const noexcept { return kind == Kind::Request; }

  /// First header whose name matches case-insensitively, or nullptr.
  const std::string* find_header(std::string_view name) const noexcept;
  std::string* find_header_mut(std::string_view name) noexcept;
  void add_header(std::string name, std::string value);
  /// Replaces the first matching header or appends a new one.
  void set_header(std::string_view name, std::string value);

  bool operator==(const SipMessage& other) const;
};

/// True iff the two header names are equal ignoring ASCII case.
bool header_name_equal(std::string_view a, std::string_view b) noexcept;

/// Parses one complete SIP message. CRLF line endings, one blank line between
/// headers and body. Throws ParseError with the offending line index.
SipMessage parse_message(std::string_view bytes);

/// Emits start-line, headers in stored order, blank line, body. The output
/// re-parses to an equal message, and parsing canonical bytes then
/// serializing reproduces them exactly.
std::string serialize_message(const SipMessage& msg);

}  // namespace sipmauth

#endif  // SIPMAUTH_MESSAGE_HPP
