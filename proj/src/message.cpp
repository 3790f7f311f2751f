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

#include "sipmauth/message.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace sipmauth {

namespace {

constexpr std::string_view kSipVersion = "SIP/2.0";
constexpr std::string_view kCrlf = "\r\n";

constexpr std::array<std::pair<Method, std::string_view>, 6> kMethodTokens = {{
    {Method::Invite, "INVITE"},
    {Method::Ack, "ACK"},
    {Method::Bye, "BYE"},
    {Method::Cancel, "CANCEL"},
    {Method::Options, "OPTIONS"},
    {Method::Register, "REGISTER"},
}};

char ascii_lower(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_blank(char c) noexcept { return c == ' ' || c == '\t'; }

std::string_view trim_blanks(std::string_view s) noexcept {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_token(Method m) noexcept {
  for (const auto& [method, token] : kMethodTokens) {
    if (method == m) return token;
  }
  return "INVITE";
}

std::optional<Method> method_from_token(std::string_view token) noexcept {
  for (const auto& [method, name] : kMethodTokens) {
    if (name == token) return method;
  }
  return std::nullopt;
}

bool header_name_equal(std::string_view a, std::string_view b) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ascii_lower(a[i]) != ascii_lower(b[i])) return false;
  }
  return true;
}

SipMessage SipMessage::request(Method method, std::string uri) {
  SipMessage msg;
  msg.kind = Kind::Request;
  msg.method = method;
  msg.request_uri = std::move(uri);
  return msg;
}

SipMessage SipMessage::response(int status, std::string reason) {
  SipMessage msg;
  msg.kind = Kind::Response;
  msg.status = status;
  msg.reason = std::move(reason);
  return msg;
}

const std::string* SipMessage::find_header(std::string_view name) const noexcept {
  for (const auto& header : headers) {
    if (header_name_equal(header.name, name)) return &header.value;
  }
  return nullptr;
}

std::string* SipMessage::find_header_mut(std::string_view name) noexcept {
  for (auto& header : headers) {
    if (header_name_equal(header.name, name)) return &header.value;
  }
  return nullptr;
}

void SipMessage::add_header(std::string name, std::string value) {
  headers.push_back(Header{std::move(name), std::move(value)});
}

void SipMessage::set_header(std::string_view name, std::string value) {
  for (auto& header : headers) {
    if (header_name_equal(header.name, name)) {
      header.value = std::move(value);
      return;
    }
  }
  headers.push_back(Header{std::string(name), std::move(value)});
}

bool SipMessage::operator==(const SipMessage& other) const {
  if (kind != other.kind || headers != other.headers || body != other.body) return false;
  if (kind == Kind::Request) {
    return method == other.method && request_uri == other.request_uri;
  }
  return status == other.status && reason == other.reason;
}

namespace {

// Splits off the next CRLF-terminated line. Returns false when no CRLF is
// left in the input.
bool next_line(std::string_view& rest, std::string_view& line) noexcept {
  const auto pos = rest.find(kCrlf);
  if (pos == std::string_view::npos) return false;
  line = rest.substr(0, pos);
  rest.remove_prefix(pos + kCrlf.size());
  return true;
}

void parse_start_line(std::string_view line, SipMessage& msg) {
  if (line.starts_with(kSipVersion)) {
    // Status line: SIP/2.0 SP 3-digit-code SP reason.
    std::string_view rest = line.substr(kSipVersion.size());
    if (rest.empty() || rest.front() != ' ') {
      throw ParseError(ParseErrc::MalformedStartLine, 0, "expected space after version");
    }
    rest.remove_prefix(1);
    if (rest.size() < 3 || !std::isdigit(static_cast<unsigned char>(rest[0])) ||
        !std::isdigit(static_cast<unsigned char>(rest[1])) ||
        !std::isdigit(static_cast<unsigned char>(rest[2]))) {
      throw ParseError(ParseErrc::MalformedStartLine, 0, "expected 3-digit status code");
    }
    const int status = (rest[0] - '0') * 100 + (rest[1] - '0') * 10 + (rest[2] - '0');
    if (status < 100 || status > 699) {
      throw ParseError(ParseErrc::MalformedStartLine, 0, "status code outside 100..699");
    }
    rest.remove_prefix(3);
    std::string reason;
    if (!rest.empty()) {
      if (rest.front() != ' ') {
        throw ParseError(ParseErrc::MalformedStartLine, 0, "expected space before reason phrase");
      }
      reason = std::string(rest.substr(1));
    }
    msg = SipMessage::response(status, std::move(reason));
    return;
  }

  // Request line: METHOD SP URI SP SIP/2.0.
  const auto first_sp = line.find(' ');
  if (first_sp == std::string_view::npos || first_sp == 0) {
    throw ParseError(ParseErrc::MalformedStartLine, 0, "expected METHOD SP URI SP version");
  }
  const std::string_view token = line.substr(0, first_sp);
  const auto method = method_from_token(token);
  if (!method) {
    throw ParseError(ParseErrc::UnknownMethod, 0, "method '" + std::string(token) + "'");
  }
  const auto last_sp = line.rfind(' ');
  if (last_sp == first_sp || line.substr(last_sp + 1) != kSipVersion) {
    throw ParseError(ParseErrc::MalformedStartLine, 0, "expected trailing SIP/2.0");
  }
  const std::string_view uri = line.substr(first_sp + 1, last_sp - first_sp - 1);
  if (uri.empty() || uri.find(' ') != std::string_view::npos) {
    throw ParseError(ParseErrc::MalformedStartLine, 0, "bad request-uri");
  }
  msg = SipMessage::request(*method, std::string(uri));
}

}  // namespace

SipMessage parse_message(std::string_view bytes) {
  std::string_view rest = bytes;
  std::string_view line;
  if (!next_line(rest, line)) {
    throw ParseError(ParseErrc::MissingBlankLine, 0, "no CRLF-terminated start line");
  }

  SipMessage msg;
  parse_start_line(line, msg);

  std::size_t line_index = 1;
  bool saw_blank = false;
  while (next_line(rest, line)) {
    if (line.empty()) {
      saw_blank = true;
      break;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw ParseError(ParseErrc::MalformedHeader, line_index, "header line without name/colon");
    }
    const std::string_view name = line.substr(0, colon);
    const std::string_view value = trim_blanks(line.substr(colon + 1));
    msg.add_header(std::string(name), std::string(value));
    ++line_index;
  }
  if (!saw_blank) {
    throw ParseError(ParseErrc::MissingBlankLine, line_index, "headers not terminated by blank line");
  }

  msg.body = std::string(rest);

  // Every Content-Length occurrence must agree with the actual body length.
  std::size_t header_line = 1;
  for (const auto& header : msg.headers) {
    if (header_name_equal(header.name, "Content-Length")) {
      const std::string_view text = header.value;
      if (text.empty() || text.size() > 10 ||
          !std::all_of(text.begin(), text.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw ParseError(ParseErrc::BadContentLength, header_line, "not a non-negative integer");
      }
      std::uint64_t declared = 0;
      for (char c : text) declared = declared * 10 + static_cast<std::uint64_t>(c - '0');
      if (declared != msg.body.size()) {
        throw ParseError(ParseErrc::BadContentLength, header_line,
                         "declared " + std::string(text) + ", body has " +
                             std::to_string(msg.body.size()) + " bytes");
      }
    }
    ++header_line;
  }

  return msg;
}

std::string serialize_message(const SipMessage& msg) {
  std::string out;
  out.reserve(64 + msg.body.size());
  if (msg.kind == SipMessage::Kind::Request) {
    out += to_token(msg.method);
    out += ' ';
    out += msg.request_uri;
    out += ' ';
    out += kSipVersion;
  } else {
    out += kSipVersion;
    out += ' ';
    out += std::to_string(msg.status);
    out += ' ';
    out += msg.reason;
  }
  out += kCrlf;
  for (const auto& header : msg.headers) {
    out += header.name;
    out += ": ";
    out += header.value;
    out += kCrlf;
  }
  out += kCrlf;
  out += msg.body;
  return out;
}

}  // namespace sipmauth
