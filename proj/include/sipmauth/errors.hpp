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

#ifndef SIPMAUTH_ERRORS_HPP
#define SIPMAUTH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sipmauth {

/// Codec failures. Every error carries the zero-based index of the offending
/// line (for message parsing) or parameter (for auth-param parsing).
enum class ParseErrc {
  MalformedStartLine,
  UnknownMethod,
  MissingBlankLine,
  BadContentLength,
  MalformedHeader,
  NotDigestScheme,
  DuplicateParameter,
  UnterminatedQuote,
  MalformedParameter,
  MissingRealm,
};

const char* to_string(ParseErrc code) noexcept;

class ParseError : public std::runtime_error {
public:
  ParseError(ParseErrc code, std::size_t index, const std::string& detail);

  ParseErrc code() const noexcept { return code_; }
  /// Line index for message errors, parameter index for auth-param errors.
  std::size_t index() const noexcept { return index_; }

private:
  ParseErrc code_;
  std::size_t index_;
};

enum class DigestErrc {
  MissingNc,
  NcOutOfRange,
  UnsupportedQop,
  BadDigestShape,
};

const char* to_string(DigestErrc code) noexcept;

class DigestError : public std::runtime_error {
public:
  DigestError(DigestErrc code, const std::string& detail);
  DigestErrc code() const noexcept { return code_; }

private:
  DigestErrc code_;
};

/// Contract misuse of the handshake state machines (driving a session from a
/// phase the operation does not accept). Protocol-level failures are not
/// errors; they come back as rejected Verdicts.
enum class SessionErrc {
  MissingCallId,
  InvalidPhase,
  UnparseableChallenge,
  UnsupportedQop,
};

const char* to_string(SessionErrc code) noexcept;

class SessionError : public std::runtime_error {
public:
  SessionError(SessionErrc code, const std::string& detail);
  SessionErrc code() const noexcept { return code_; }

private:
  SessionErrc code_;
};

enum class SimErrc {
  UnknownScenario,
  NoAuthorizationLeg,
  NotMutualMode,
  IncompleteTranscript,
  BadConfig,
};

const char* to_string(SimErrc code) noexcept;

class SimError : public std::runtime_error {
public:
  SimError(SimErrc code, const std::string& detail);
  SimErrc code() const noexcept { return code_; }

private:
  SimErrc code_;
};

}  // namespace sipmauth

#endif  // SIPMAUTH_ERRORS_HPP
