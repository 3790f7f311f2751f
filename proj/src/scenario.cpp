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

#include "sipmauth/scenario.hpp"

#include <deque>

namespace sipmauth {

namespace {

constexpr std::size_t kLegCap = 64;

Direction opposite(Direction d) {
  return d == Direction::ClientToServer ? Direction::ServerToClient
                                        : Direction::ClientToServer;
}

struct PendingLeg {
  Direction direction;
  std::string bytes;
};

CredentialStore store_for(const ScenarioConfig& config) {
  CredentialStore store;
  store.add(config.username, config.realm, config.password);
  return store;
}

ServerEndpoint server_for(const ScenarioConfig& config, HashCounter& counter) {
  return ServerEndpoint(ServerConfig{config.realm, config.server_ip},
                        store_for(config), config.mode,
                        Rng::derive(config.seed, 2), &counter);
}

}  // namespace

HandshakeResult run_handshake(const ScenarioConfig& config, ServerEndpoint& server,
                              Adversary* adversary, HashCounter& client_counter,
                              HashCounter& server_counter,
                              const std::string& client_password) {
  ClientEndpoint client(
      ClientCredentials{config.username, config.realm, client_password},
      config.mode, config.server_ip, Rng::derive(config.seed, 1), &client_counter);

  HandshakeResult result;
  result.transcript.scenario_name = config.scenario;
  result.transcript.seed = config.seed;
  result.transcript.mode = config.mode;
  result.transcript.config = config;

  std::deque<PendingLeg> pending;
  pending.push_back(PendingLeg{Direction::ClientToServer, client.initial_invite()});

  while (!pending.empty() && result.legs < kLegCap) {
    PendingLeg leg = std::move(pending.front());
    pending.pop_front();

    Adversary::Action action =
        adversary ? adversary->on_message(leg.direction, leg.bytes,
                                          result.transcript.events.size())
                  : Adversary::Action::deliver();
    if (action.kind == Adversary::Action::Kind::Drop) {
      result.transcript.record(leg.direction, std::move(leg.bytes),
                               Annotation::dropped(std::move(action.note)));
      continue;
    }
    std::string delivered = action.kind == Adversary::Action::Kind::Replace
                                ? std::move(action.replacement)
                                : std::move(leg.bytes);
    Annotation annotation = action.kind == Adversary::Action::Kind::Replace
                                ? Annotation::tampered(std::move(action.note))
                                : Annotation::delivered();
    result.transcript.record(leg.direction, delivered, std::move(annotation));
    ++result.legs;
    result.bytes_on_wire += delivered.size();

    std::optional<std::string> reply = leg.direction == Direction::ClientToServer
                                           ? server.receive(delivered)
                                           : client.receive(delivered);
    if (reply) pending.push_back(PendingLeg{opposite(leg.direction), *std::move(reply)});
  }
  if (result.legs >= kLegCap) {
    result.transcript.notes.push_back("flow stopped at the 64-leg cap");
  }
  if (!client.last_error().empty()) {
    result.transcript.notes.push_back("client aborted: " + client.last_error());
  }

  if (adversary) {
    for (Adversary::Injection& injection : adversary->after_flow(result.transcript)) {
      Annotation annotation = injection.replay_of
                                  ? Annotation::replayed(*injection.replay_of)
                                  : Annotation::tampered(injection.note);
      if (injection.replay_of && !injection.note.empty()) {
        annotation.note = injection.note;
      }
      result.transcript.record(Direction::AdversaryInjected, injection.bytes,
                               std::move(annotation));
      std::optional<std::string> reply =
          injection.target == Direction::ClientToServer
              ? server.receive(injection.bytes)
              : client.receive(injection.bytes);
      if (reply) {
        result.transcript.record(opposite(injection.target), *reply,
                                 Annotation{Annotation::Kind::Delivered,
                                            "reply to injected traffic", std::nullopt});
      }
    }
  }

  const Verdict* server_last = server.last_verdict();
  result.server_verdict =
      server_last ? *server_last
                  : Verdict::reject(VerdictReason::BadResponse, "no verification ran");
  result.client_verdict =
      client.verdicts().empty()
          ? Verdict::reject(VerdictReason::EchoMismatch, "no 200 OK was checked")
          : client.verdicts().back();
  result.accepted = result.server_verdict.ok() &&
                    (client.phase() == ClientPhase::Done ||
                     client.phase() == ClientPhase::ServerAuthenticated);
  result.client_hash_calls = client_counter.calls;
  result.server_hash_calls = server_counter.calls;
  return result;
}

HandshakeResult run_handshake(const CredentialStore& server_creds,
                              const ClientCredentials& client_creds, Mode mode,
                              std::uint64_t seed) {
  ScenarioConfig config;
  config.scenario = "honest-" + std::string(to_token(mode));
  config.seed = seed;
  config.mode = mode;
  config.username = client_creds.username;
  config.password = client_creds.password;
  config.realm = client_creds.realm;
  HashCounter client_counter;
  HashCounter server_counter;
  ServerEndpoint server(ServerConfig{config.realm, config.server_ip}, server_creds,
                        mode, Rng::derive(seed, 2), &server_counter);
  return run_handshake(config, server, nullptr, client_counter, server_counter,
                       client_creds.password);
}

std::vector<std::string> scenario_names() {
  return {"honest-mutual", "honest-selective", "wrong-password", "replay",
          "forge-ok",      "tamper-auth",      "dictionary"};
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  ScenarioConfig cfg = config;
  const std::string& name = cfg.scenario;

  auto honest = [](const ScenarioConfig& c, const std::string& client_password)
      -> HandshakeResult {
    HashCounter client_counter;
    HashCounter server_counter;
    ServerEndpoint server = server_for(c, server_counter);
    return run_handshake(c, server, nullptr, client_counter, server_counter,
                         client_password);
  };

  if (name == "honest-mutual" || name == "honest-selective") {
    cfg.mode = name == "honest-mutual" ? Mode::Mutual : Mode::Selective;
    return ScenarioResult{honest(cfg, cfg.password), std::nullopt};
  }

  if (name == "wrong-password") {
    HandshakeResult result = honest(cfg, cfg.password + "-wrong");
    result.transcript.notes.push_back(
        "client deliberately used a wrong password");
    return ScenarioResult{std::move(result), std::nullopt};
  }

  if (name == "replay") {
    HandshakeResult result = honest(cfg, cfg.password);
    ReplayTarget target = ReplayTarget::SameServer;
    if (cfg.mutation) {
      if (*cfg.mutation == "fresh_server") target = ReplayTarget::FreshServer;
      else if (*cfg.mutation != "same_server") {
        throw SimError(SimErrc::BadConfig,
                       "replay mutation must be same_server or fresh_server");
      }
    }
    AttackOutcome outcome =
        replay_attack(result.transcript, Rng::derive(cfg.seed, 3), target);
    return ScenarioResult{std::move(result), std::move(outcome)};
  }

  if (name == "forge-ok") {
    cfg.mode = Mode::Mutual;
    HandshakeResult result = honest(cfg, cfg.password);
    EchoMutation mutation = EchoMutation::Nonce;
    if (cfg.mutation) {
      auto parsed = echo_mutation_from_token(*cfg.mutation);
      if (!parsed) {
        throw SimError(SimErrc::BadConfig,
                       "forge-ok mutation must be none|nonce|cnonce|qop|nc");
      }
      mutation = *parsed;
    }
    AttackOutcome outcome = forge_ok_attack(result.transcript, mutation);
    return ScenarioResult{std::move(result), std::move(outcome)};
  }

  if (name == "tamper-auth") {
    HandshakeResult result = honest(cfg, cfg.password);
    TamperTarget target = TamperTarget::Response;
    if (cfg.mutation) {
      auto parsed = tamper_target_from_token(*cfg.mutation);
      if (!parsed) {
        throw SimError(SimErrc::BadConfig,
                       "tamper-auth mutation must be response|nc|serverip|qop|username");
      }
      target = *parsed;
    }
    AttackOutcome outcome = tamper_authorization_attack(result.transcript, target);
    return ScenarioResult{std::move(result), std::move(outcome)};
  }

  if (name == "dictionary") {
    HandshakeResult result = honest(cfg, cfg.password);
    std::vector<std::string> wordlist = cfg.wordlist_path
                                            ? load_wordlist(*cfg.wordlist_path)
                                            : default_wordlist();
    AttackOutcome outcome = offline_dictionary_attack(result.transcript, wordlist);
    return ScenarioResult{std::move(result), std::move(outcome)};
  }

  throw SimError(SimErrc::UnknownScenario, "no scenario named \"" + name + "\"");
}

}  // namespace sipmauth
