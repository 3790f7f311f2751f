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

#include "sipmauth/attacks.hpp"

#include <fstream>

#include "sipmauth/auth_params.hpp"
#include "sipmauth/message.hpp"
#include "sipmauth/scenario.hpp"

namespace sipmauth {

namespace {

/// First event whose payload parses as the given predicate wants.
template <typename Pred>
std::optional<std::size_t> find_event(const Transcript& t, Pred&& pred) {
  for (const TranscriptEvent& event : t.events) {
    if (event.annotation.kind == Annotation::Kind::Dropped) continue;
    try {
      SipMessage msg = parse_message(event.wire_bytes);
      if (pred(event, msg)) return event.index;
    } catch (const ParseError&) {
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> find_authorization_leg(const Transcript& t) {
  return find_event(t, [](const TranscriptEvent& event, const SipMessage& msg) {
    return event.direction == Direction::ClientToServer && msg.is_request() &&
           msg.find_header("Authorization") != nullptr;
  });
}

std::optional<std::size_t> find_challenge_leg(const Transcript& t) {
  return find_event(t, [](const TranscriptEvent& event, const SipMessage& msg) {
    return event.direction == Direction::ServerToClient && !msg.is_request() &&
           msg.status == 401 && msg.find_header("WWW-Authenticate") != nullptr;
  });
}

char cycle_hex(char c) {
  static const char kHex[] = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) {
    if (kHex[i] == c) return kHex[(i + 1) % 16];
  }
  return '0';
}

std::string cycle_first_hex(std::string value) {
  if (!value.empty()) value[0] = cycle_hex(value[0]);
  return value;
}

/// Re-serializes `msg` with one auth header swapped for mutated params.
std::string rewrite_header(SipMessage msg, AuthHeader header, const AuthParams& params) {
  msg.set_header(to_header_name(header), serialize_auth_params(params, header));
  return serialize_message(msg);
}

struct ReplayAdversary final : Adversary {
  std::string replayed_bytes;
  std::size_t original_index = 0;

  std::vector<Injection> after_flow(const Transcript&) override {
    Injection injection;
    injection.target = Direction::ClientToServer;
    injection.bytes = replayed_bytes;
    injection.replay_of = original_index;
    injection.note = "captured credentialed INVITE re-sent";
    return {std::move(injection)};
  }
};

struct ForgeAdversary final : Adversary {
  EchoMutation mutation = EchoMutation::Nonce;
  bool forged = false;

  Action on_message(Direction direction, const std::string& bytes,
                    std::size_t) override {
    if (direction != Direction::ServerToClient || forged) return Action::deliver();
    SipMessage msg;
    try {
      msg = parse_message(bytes);
    } catch (const ParseError&) {
      return Action::deliver();
    }
    if (msg.is_request() || msg.status != 200 ||
        !msg.find_header("Authentication-Info")) {
      return Action::deliver();
    }
    forged = true;
    if (mutation == EchoMutation::None) return Action::deliver();

    AuthParams echo = parse_auth_params(*msg.find_header("Authentication-Info"));
    std::string note = "forged 200 OK: ";
    switch (mutation) {
      case EchoMutation::Nonce:
        echo.nonce = cycle_first_hex(echo.nonce.value_or("0"));
        note += "nonce altered";
        break;
      case EchoMutation::Cnonce:
        echo.cnonce = cycle_first_hex(echo.cnonce.value_or("0"));
        note += "cnonce altered";
        break;
      case EchoMutation::Qop:
        echo.qop = {"auth-int"};
        note += "qop altered";
        break;
      case EchoMutation::Nc:
        echo.nc = cycle_first_hex(echo.nc.value_or("00000001"));
        note += "nc altered";
        break;
      case EchoMutation::None:
        break;
    }
    return Action::replace(rewrite_header(std::move(msg),
                                          AuthHeader::AuthenticationInfo, echo),
                           std::move(note));
  }
};

struct TamperAdversary final : Adversary {
  TamperTarget target = TamperTarget::Response;
  const ScenarioConfig* config = nullptr;
  bool tampered = false;

  Action on_message(Direction direction, const std::string& bytes,
                    std::size_t) override {
    if (direction != Direction::ClientToServer || tampered) return Action::deliver();
    SipMessage msg;
    try {
      msg = parse_message(bytes);
    } catch (const ParseError&) {
      return Action::deliver();
    }
    if (!msg.is_request() || !msg.find_header("Authorization")) {
      return Action::deliver();
    }
    tampered = true;

    AuthParams params = parse_auth_params(*msg.find_header("Authorization"));
    std::string note = "tampered Authorization: ";
    switch (target) {
      case TamperTarget::Response:
        params.response = cycle_first_hex(params.response.value_or(""));
        note += "response digit flipped";
        break;
      case TamperTarget::Nc:
        params.nc = cycle_first_hex(params.nc.value_or("00000001"));
        note += "nc rewritten without recomputing the digest";
        break;
      case TamperTarget::Serverip: {
        std::string decoy = "203.0.113.253";
        if (config && config->server_ip == decoy) decoy = "203.0.113.254";
        params.serverip = decoy;
        note += "serverip redirected";
        break;
      }
      case TamperTarget::Qop:
        params.qop = {"auth-int"};
        note += "qop switched to auth-int";
        break;
      case TamperTarget::Username: {
        std::string decoy = "mallory";
        if (config && config->username == decoy) decoy = "mallory2";
        params.username = decoy;
        note += "username replaced";
        break;
      }
    }
    return Action::replace(rewrite_header(std::move(msg), AuthHeader::Authorization,
                                          params),
                           std::move(note));
  }
};

HandshakeResult rerun_with(const ScenarioConfig& config, Adversary* adversary,
                           ServerEndpoint& server, HashCounter& client_counter,
                           HashCounter& server_counter) {
  return run_handshake(config, server, adversary, client_counter, server_counter,
                       config.password);
}

ServerEndpoint build_server(const ScenarioConfig& config, HashCounter& counter,
                            std::uint64_t seed_index) {
  CredentialStore store;
  store.add(config.username, config.realm, config.password);
  return ServerEndpoint(ServerConfig{config.realm, config.server_ip},
                        std::move(store), config.mode,
                        Rng::derive(config.seed, seed_index), &counter);
}

}  // namespace

std::string_view to_token(AttackKind k) noexcept {
  switch (k) {
    case AttackKind::Replay: return "replay";
    case AttackKind::ForgeOk: return "forge_ok";
    case AttackKind::OfflineDictionary: return "offline_dictionary";
    case AttackKind::TamperAuthorization: return "tamper_authorization";
  }
  return "replay";
}

std::string_view to_token(EchoMutation m) noexcept {
  switch (m) {
    case EchoMutation::None: return "none";
    case EchoMutation::Nonce: return "nonce";
    case EchoMutation::Cnonce: return "cnonce";
    case EchoMutation::Qop: return "qop";
    case EchoMutation::Nc: return "nc";
  }
  return "none";
}

std::optional<EchoMutation> echo_mutation_from_token(std::string_view token) noexcept {
  if (token == "none") return EchoMutation::None;
  if (token == "nonce") return EchoMutation::Nonce;
  if (token == "cnonce") return EchoMutation::Cnonce;
  if (token == "qop") return EchoMutation::Qop;
  if (token == "nc") return EchoMutation::Nc;
  return std::nullopt;
}

std::string_view to_token(TamperTarget t) noexcept {
  switch (t) {
    case TamperTarget::Response: return "response";
    case TamperTarget::Nc: return "nc";
    case TamperTarget::Serverip: return "serverip";
    case TamperTarget::Qop: return "qop";
    case TamperTarget::Username: return "username";
  }
  return "response";
}

std::optional<TamperTarget> tamper_target_from_token(std::string_view token) noexcept {
  if (token == "response") return TamperTarget::Response;
  if (token == "nc") return TamperTarget::Nc;
  if (token == "serverip") return TamperTarget::Serverip;
  if (token == "qop") return TamperTarget::Qop;
  if (token == "username") return TamperTarget::Username;
  return std::nullopt;
}

nlohmann::json AttackOutcome::to_json() const {
  nlohmann::json j{
      {"attack", std::string(to_token(kind))},
      {"succeeded", succeeded},
      {"defender_reason", std::string(to_token(defender_reason))},
      {"detail", detail},
      {"digest_trials", digest_trials},
      {"injected_messages", injected_messages},
  };
  if (recovered_secret) j["recovered_secret"] = *recovered_secret;
  return j;
}

AttackOutcome replay_attack(const Transcript& victim, std::uint64_t seed,
                            ReplayTarget target) {
  auto auth_leg = find_authorization_leg(victim);
  if (!auth_leg) {
    throw SimError(SimErrc::NoAuthorizationLeg,
                   "transcript holds no credentialed INVITE to replay");
  }
  const std::string& captured = victim.events[*auth_leg].wire_bytes;

  AttackOutcome outcome;
  outcome.kind = AttackKind::Replay;
  outcome.injected_messages = 1;

  if (target == ReplayTarget::SameServer) {
    HashCounter client_counter;
    HashCounter server_counter;
    ServerEndpoint server = build_server(victim.config, server_counter, 2);
    ReplayAdversary adversary;
    adversary.replayed_bytes = captured;
    adversary.original_index = *auth_leg;
    rerun_with(victim.config, &adversary, server, client_counter, server_counter);
    const Verdict* verdict = server.last_verdict();
    outcome.succeeded = verdict && verdict->ok();
    outcome.defender_reason = verdict ? verdict->reason : VerdictReason::NonceMismatch;
    outcome.detail = outcome.succeeded
                         ? "server accepted the replayed INVITE again"
                         : "server rejected the replay: " +
                               (verdict ? verdict->detail : std::string("no verdict"));
  } else {
    HashCounter fresh_counter;
    ScenarioConfig fresh_config = victim.config;
    fresh_config.seed = seed;
    ServerEndpoint fresh = build_server(fresh_config, fresh_counter, 2);
    fresh.receive(captured);
    const Verdict* verdict = fresh.last_verdict();
    outcome.succeeded = verdict && verdict->ok();
    outcome.defender_reason = verdict ? verdict->reason : VerdictReason::NonceMismatch;
    outcome.detail = outcome.succeeded
                         ? "fresh server accepted the replayed INVITE"
                         : "fresh server rejected the replay: " +
                               (verdict ? verdict->detail : std::string("dropped"));
  }
  return outcome;
}

AttackOutcome forge_ok_attack(const Transcript& victim, EchoMutation mutation) {
  if (victim.mode != Mode::Mutual) {
    throw SimError(SimErrc::NotMutualMode,
                   "forged-echo attack only applies to mutual transcripts");
  }
  HashCounter client_counter;
  HashCounter server_counter;
  ServerEndpoint server = build_server(victim.config, server_counter, 2);
  ForgeAdversary adversary;
  adversary.mutation = mutation;
  HandshakeResult rerun = rerun_with(victim.config, &adversary, server,
                                     client_counter, server_counter);

  AttackOutcome outcome;
  outcome.kind = AttackKind::ForgeOk;
  outcome.injected_messages = mutation == EchoMutation::None ? 0 : 1;
  outcome.succeeded = rerun.client_verdict.ok();
  outcome.defender_reason = rerun.client_verdict.reason;
  if (mutation == EchoMutation::None) {
    outcome.detail = outcome.succeeded
                         ? "genuine 200 OK relayed unmodified; client accepted, "
                           "as any relay of authentic bytes must be"
                         : "client rejected the genuine 200 OK";
  } else {
    outcome.detail = outcome.succeeded
                         ? "client accepted a 200 OK with a mutated " +
                               std::string(to_token(mutation)) + " echo"
                         : "client rejected the forged echo: " +
                               rerun.client_verdict.detail;
  }
  return outcome;
}

AttackOutcome tamper_authorization_attack(const Transcript& victim,
                                          TamperTarget target) {
  if (!find_authorization_leg(victim)) {
    throw SimError(SimErrc::NoAuthorizationLeg,
                   "transcript holds no credentialed INVITE to tamper with");
  }
  HashCounter client_counter;
  HashCounter server_counter;
  ServerEndpoint server = build_server(victim.config, server_counter, 2);
  TamperAdversary adversary;
  adversary.target = target;
  adversary.config = &victim.config;
  HandshakeResult rerun = rerun_with(victim.config, &adversary, server,
                                     client_counter, server_counter);

  AttackOutcome outcome;
  outcome.kind = AttackKind::TamperAuthorization;
  outcome.injected_messages = 1;
  outcome.succeeded = rerun.server_verdict.ok();
  outcome.defender_reason = rerun.server_verdict.reason;
  outcome.detail = outcome.succeeded
                       ? "server accepted a tampered " +
                             std::string(to_token(target)) + " field"
                       : "server rejected the tampered request: " +
                             rerun.server_verdict.detail;
  return outcome;
}

AttackOutcome offline_dictionary_attack(const Transcript& victim,
                                        const std::vector<std::string>& wordlist) {
  auto challenge_leg = find_challenge_leg(victim);
  auto auth_leg = find_authorization_leg(victim);
  if (!challenge_leg || !auth_leg) {
    throw SimError(SimErrc::IncompleteTranscript,
                   "dictionary attack needs both the 401 and the "
                   "credentialed INVITE on the wire");
  }
  SipMessage request = parse_message(victim.events[*auth_leg].wire_bytes);
  AuthParams params = parse_auth_params(*request.find_header("Authorization"));

  AttackOutcome outcome;
  outcome.kind = AttackKind::OfflineDictionary;

  if (!params.username || !params.realm || !params.nonce || !params.uri ||
      !params.response) {
    throw SimError(SimErrc::IncompleteTranscript,
                   "Authorization header lacks the fields the attack reads");
  }
  HexDigest captured;
  try {
    captured = HexDigest(*params.response);
  } catch (const DigestError&) {
    throw SimError(SimErrc::IncompleteTranscript,
                   "captured response is not a 32-digit digest");
  }
  const std::string method(to_token(request.method));
  const bool with_qop = !params.qop.empty();

  for (std::size_t i = 0; i < wordlist.size(); ++i) {
    const std::string& candidate = wordlist[i];
    HexDigest guess;
    if (with_qop) {
      DigestInputs inputs;
      inputs.username = *params.username;
      inputs.realm = *params.realm;
      inputs.password = candidate;
      inputs.method = method;
      inputs.digest_uri = *params.uri;
      inputs.nonce = *params.nonce;
      inputs.nc = params.nc.value_or("00000001");
      inputs.qop = params.qop.front();
      inputs.cnonce = params.cnonce;
      guess = response_qop(inputs);
    } else {
      HexDigest ha1 = h_a1(*params.username, *params.realm, candidate);
      HexDigest ha2 = h_a2(method, *params.uri);
      guess = response_legacy(ha1, *params.nonce, ha2);
    }
    ++outcome.digest_trials;
    if (guess == captured) {
      outcome.succeeded = true;
      outcome.recovered_secret = candidate;
      outcome.detail = "password recovered after " +
                       std::to_string(outcome.digest_trials) + " of " +
                       std::to_string(wordlist.size()) +
                       " candidates; every digest input except the password "
                       "is on the wire";
      return outcome;
    }
  }
  outcome.detail = "no candidate among " + std::to_string(wordlist.size()) +
                   " matched the captured digest";
  return outcome;
}

std::vector<std::string> load_wordlist(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open wordlist: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    words.push_back(line);
  }
  return words;
}

const std::vector<std::string>& default_wordlist() {
  static const std::vector<std::string> kWords = {
      "123456",  "password", "letmein",        "qwerty",
      "dragon",  "monkey",   "circle-of-life", "sunshine",
      "trustno1", "baseball",
  };
  return kWords;
}

}  // namespace sipmauth
