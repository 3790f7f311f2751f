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

#include "sipmauth/endpoints.hpp"

#include "sipmauth/auth_params.hpp"
#include "sipmauth/message.hpp"

namespace sipmauth {

ClientEndpoint::ClientEndpoint(ClientCredentials creds, Mode mode,
                               std::string server_host, std::uint64_t seed,
                               HashCounter* counter)
    : creds_(std::move(creds)),
      mode_(mode),
      server_host_(std::move(server_host)),
      rng_(seed),
      counter_(counter) {}

std::string ClientEndpoint::initial_invite() {
  SipMessage invite = SipMessage::request(Method::Invite,
                                          "sip:service@" + server_host_);
  invite.add_header("Via", "SIP/2.0/UDP client.invalid;branch=z9hG4bK" + rng_.hex(8));
  invite.add_header("Max-Forwards", "70");
  invite.add_header("From", "<sip:" + creds_.username + "@" + creds_.realm +
                                ">;tag=" + rng_.hex(4));
  invite.add_header("To", "<sip:service@" + server_host_ + ">");
  invite.add_header("Call-ID", rng_.hex(8) + "@client.invalid");
  invite.add_header("CSeq", "1 INVITE");
  invite.add_header("Contact", "<sip:" + creds_.username + "@client.invalid>");
  invite.add_header("Content-Length", "0");
  original_invite_ = invite;
  invited_ = true;
  std::string bytes = serialize_message(invite);
  bytes_sent_ += bytes.size();
  return bytes;
}

std::optional<std::string> ClientEndpoint::receive(const std::string& bytes) {
  SipMessage msg;
  try {
    msg = parse_message(bytes);
  } catch (const ParseError&) {
    ++parse_failures_;
    return std::nullopt;
  }
  if (msg.kind != SipMessage::Kind::Response || !invited_) return std::nullopt;

  if (msg.status == 401 && phase_ == ClientPhase::AwaitingChallenge) {
    try {
      AuthorizeResult result = client_handle_challenge(creds_, mode_,
                                                       original_invite_, msg,
                                                       rng_, counter_);
      session_ = std::move(result.state);
      phase_ = session_.phase;
      std::string out = serialize_message(result.request);
      bytes_sent_ += out.size();
      return out;
    } catch (const SessionError& err) {
      phase_ = ClientPhase::Terminated;
      last_error_ = err.what();
      return std::nullopt;
    }
  }

  if (msg.status == 200 && phase_ == ClientPhase::AwaitingOk) {
    Verdict verdict = client_verify_ok(session_, msg);
    verdicts_.push_back(verdict);
    phase_ = verdict.ok() ? session_.phase : ClientPhase::Terminated;
    if (!verdict.ok()) return std::nullopt;
    SipMessage ack = SipMessage::request(Method::Ack, original_invite_.request_uri);
    for (const Header& h : original_invite_.headers) {
      if (header_name_equal(h.name, "Via") || header_name_equal(h.name, "From") ||
          header_name_equal(h.name, "To") || header_name_equal(h.name, "Call-ID")) {
        ack.headers.push_back(h);
      }
    }
    ack.add_header("CSeq", "2 ACK");
    ack.add_header("Content-Length", "0");
    std::string out = serialize_message(ack);
    bytes_sent_ += out.size();
    return out;
  }

  if (msg.status >= 400 && phase_ == ClientPhase::AwaitingOk) {
    phase_ = ClientPhase::Terminated;
    return std::nullopt;
  }
  return std::nullopt;
}

ServerEndpoint::ServerEndpoint(ServerConfig config, CredentialStore store,
                               Mode mode, std::uint64_t seed, HashCounter* counter)
    : config_(std::move(config)),
      store_(std::move(store)),
      mode_(mode),
      rng_(seed),
      counter_(counter),
      ledger_(std::make_shared<NonceLedger>()) {}

const ServerSessionState* ServerEndpoint::session(const std::string& call_id) const {
  auto it = sessions_.find(call_id);
  return it == sessions_.end() ? nullptr : &it->second;
}

std::optional<std::string> ServerEndpoint::receive(const std::string& bytes) {
  SipMessage msg;
  try {
    msg = parse_message(bytes);
  } catch (const ParseError&) {
    ++parse_failures_;
    return std::nullopt;
  }
  if (msg.kind != SipMessage::Kind::Request) return std::nullopt;

  if (msg.method == Method::Invite) {
    auto reply = handle_invite(msg);
    if (reply) bytes_sent_ += reply->size();
    return reply;
  }
  if (msg.method == Method::Ack) return std::nullopt;
  return std::nullopt;
}

std::optional<std::string> ServerEndpoint::handle_invite(const SipMessage& msg) {
  const std::string* call_id = msg.find_header("Call-ID");
  if (!call_id) return std::nullopt;
  const bool has_auth = msg.find_header("Authorization") != nullptr;

  if (!has_auth) {
    ChallengeResult result = server_make_challenge(rng_, config_, msg, mode_, ledger_);
    sessions_[*call_id] = std::move(result.state);
    return serialize_message(result.challenge);
  }

  auto it = sessions_.find(*call_id);
  if (it == sessions_.end()) {
    // Credentials for a dialog this server never challenged. Verify against
    // a session that could not have issued the nonce, which pins the verdict
    // to NonceMismatch without hashing anything.
    ServerSessionState unknown;
    unknown.call_id = *call_id;
    unknown.mode = mode_;
    unknown.realm = config_.realm;
    unknown.server_ip = config_.server_ip;
    unknown.ledger = ledger_;
    VerifyResult result = server_verify_authorization(unknown, store_, msg, counter_);
    verdicts_.push_back(result.verdict);
    return serialize_message(result.reply);
  }

  ServerSessionState& state = it->second;
  if (state.phase == ServerPhase::AwaitingAuth) {
    VerifyResult result = server_verify_authorization(state, store_, msg, counter_);
    verdicts_.push_back(result.verdict);
    return serialize_message(result.reply);
  }

  // The dialog already authenticated once; a second credentialed INVITE is
  // re-checked against a scratch copy that shares the real ledger, so a
  // byte-for-byte replay trips the consumed nonce/nc pair while the real
  // session stays untouched.
  ServerSessionState replay_view = state;
  replay_view.phase = ServerPhase::AwaitingAuth;
  VerifyResult result = server_verify_authorization(replay_view, store_, msg, counter_);
  verdicts_.push_back(result.verdict);
  if (result.verdict.ok()) {
    // Legacy mode has no ledger to trip; the replay genuinely re-authenticates.
    sessions_[*call_id] = std::move(replay_view);
  }
  return serialize_message(result.reply);
}

}  // namespace sipmauth
