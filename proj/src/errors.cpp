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

#include "sipmauth/errors.hpp"

namespace sipmauth {

namespace {

std::string describe(const char* code, std::size_t index, const std::string& detail) {
  std::string out = code;
  out += " at index ";
  out += std::to_string(index);
  if (!detail.empty()) {
    out += ": ";
    out += detail;
  }
  return out;
}

std::string describe(const char* code, const std::string& detail) {
  std::string out = code;
  if (!detail.empty()) {
    out += ": ";
    out += detail;
  }
  return out;
}

}  // namespace

const char* to_string(ParseErrc code) noexcept {
  switch (code) {
    case ParseErrc::MalformedStartLine: return "MalformedStartLine";
    case ParseErrc::UnknownMethod: return "UnknownMethod";
    case ParseErrc::MissingBlankLine: return "MissingBlankLine";
    case ParseErrc::BadContentLength: return "BadContentLength";
    case ParseErrc::MalformedHeader: return "MalformedHeader";
    case ParseErrc::NotDigestScheme: return "NotDigestScheme";
    case ParseErrc::DuplicateParameter: return "DuplicateParameter";
    case ParseErrc::UnterminatedQuote: return "UnterminatedQuote";
    case ParseErrc::MalformedParameter: return "MalformedParameter";
    case ParseErrc::MissingRealm: return "MissingRealm";
  }
  return "ParseError";
}

ParseError::ParseError(ParseErrc code, std::size_t index, const std::string& detail)
    : std::runtime_error(describe(to_string(code), index, detail)), code_(code), index_(index) {}

const char* to_string(DigestErrc code) noexcept {
  switch (code) {
    case DigestErrc::MissingNc: return "MissingNc";
    case DigestErrc::NcOutOfRange: return "NcOutOfRange";
    case DigestErrc::UnsupportedQop: return "UnsupportedQop";
    case DigestErrc::BadDigestShape: return "BadDigestShape";
  }
  return "DigestError";
}

DigestError::DigestError(DigestErrc code, const std::string& detail)
    : std::runtime_error(describe(to_string(code), detail)), code_(code) {}

const char* to_string(SessionErrc code) noexcept {
  switch (code) {
    case SessionErrc::MissingCallId: return "MissingCallId";
    case SessionErrc::InvalidPhase: return "InvalidPhase";
    case SessionErrc::UnparseableChallenge: return "UnparseableChallenge";
    case SessionErrc::UnsupportedQop: return "UnsupportedQop";
  }
  return "SessionError";
}

SessionError::SessionError(SessionErrc code, const std::string& detail)
    : std::runtime_error(describe(to_string(code), detail)), code_(code) {}

const char* to_string(SimErrc code) noexcept {
  switch (code) {
    case SimErrc::UnknownScenario: return "UnknownScenario";
    case SimErrc::NoAuthorizationLeg: return "NoAuthorizationLeg";
    case SimErrc::NotMutualMode: return "NotMutualMode";
    case SimErrc::IncompleteTranscript: return "IncompleteTranscript";
    case SimErrc::BadConfig: return "BadConfig";
  }
  return "SimError";
}

SimError::SimError(SimErrc code, const std::string& detail)
    : std::runtime_error(describe(to_string(code), detail)), code_(code) {}

}  // namespace sipmauth
