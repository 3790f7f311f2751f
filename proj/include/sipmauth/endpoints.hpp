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

#ifndef SIPMAUTH_ENDPOINTS_HPP
#define SIPMAUTH_ENDPOINTS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sipmauth/credentials.hpp"
#include "sipmauth/session.hpp"

namespace sipmauth {

/// UAC side of the simulated dialog. Feed it raw wire bytes; it parses,
/// advances its state machine, and hands back the bytes to send, if any.
/// Unparseable input is dropped and counted, never thrown.
class ClientEndpoint {
public:
  ClientEndpoint(ClientCredentials creds, Mode mode, std::string server_host,
                 std::uint64_t seed, HashCounter* counter = nullptr);

  /// The opening INVITE (CSeq 1, no credentials). Call once.
  std::string initial_invite();

  std::optional<std::string> receive(const std::string& bytes);

  ClientPhase phase() const { return phase_; }
  const std::vector<Verdict>& verdicts() const { return verdicts_; }
  const ClientSessionState& session() const { return session_; }
  std::size_t parse_failures() const { return parse_failures_; }
  std::uint64_t bytes_sent() const { return bytes_sent_; }
  /// Non-empty when a state-machine error ended the dialog early.
  const std::string& last_error() const { return last_error_; }

private:
  ClientCredentials creds_;
  Mode mode_;
  std::string server_host_;
  Rng rng_;
  HashCounter* counter_;
  SipMessage original_invite_;
  ClientSessionState session_;
  ClientPhase phase_ = ClientPhase::AwaitingChallenge;
  std::vector<Verdict> verdicts_;
  std::size_t parse_failures_ = 0;
  std::uint64_t bytes_sent_ = 0;
  std::string last_error_;
  bool invited_ = false;
};

/// UAS side. Owns one session per Call-ID plus the nonce ledger shared by
/// all of them, which is what lets a replayed Authorization from a finished
/// dialog be recognized.
class ServerEndpoint {
public:
  ServerEndpoint(ServerConfig config, CredentialStore store, Mode mode,
                 std::uint64_t seed, HashCounter* counter = nullptr);

  std::optional<std::string> receive(const std::string& bytes);

  const std::vector<Verdict>& verdicts() const { return verdicts_; }
  const Verdict* last_verdict() const {
    return verdicts_.empty() ? nullptr : &verdicts_.back();
  }
  const std::shared_ptr<NonceLedger>& ledger() const { return ledger_; }
  const ServerSessionState* session(const std::string& call_id) const;
  std::size_t parse_failures() const { return parse_failures_; }
  std::uint64_t bytes_sent() const { return bytes_sent_; }

private:
  std::optional<std::string> handle_invite(const SipMessage& msg);

  ServerConfig config_;
  CredentialStore store_;
  Mode mode_;
  Rng rng_;
  HashCounter* counter_;
  std::shared_ptr<NonceLedger> ledger_;
  std::map<std::string, ServerSessionState> sessions_;
  std::vector<Verdict> verdicts_;
  std::size_t parse_failures_ = 0;
  std::uint64_t bytes_sent_ = 0;
};

}  // namespace sipmauth

#endif  // SIPMAUTH_ENDPOINTS_HPP
