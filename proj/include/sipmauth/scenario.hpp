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

#ifndef SIPMAUTH_SCENARIO_HPP
#define SIPMAUTH_SCENARIO_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sipmauth/attacks.hpp"
#include "sipmauth/endpoints.hpp"
#include "sipmauth/transcript.hpp"

namespace sipmauth {

/// Sits on the wire between the two endpoints. Every leg of the honest flow
/// passes through on_message; once the flow quiesces the adversary may
/// inject messages of its own.
class Adversary {
public:
  struct Action {
    enum class Kind { Deliver, Drop, Replace };
    Kind kind = Kind::Deliver;
    std::string replacement;
    std::string note;

    static Action deliver() { return {}; }
    static Action drop(std::string note) {
      return Action{Kind::Drop, {}, std::move(note)};
    }
    static Action replace(std::string bytes, std::string note) {
      return Action{Kind::Replace, std::move(bytes), std::move(note)};
    }
  };

  struct Injection {
    Direction target = Direction::ClientToServer;  // who receives it
    std::string bytes;
    std::optional<std::size_t> replay_of;
    std::string note;
  };

  virtual ~Adversary() = default;
  virtual Action on_message(Direction direction, const std::string& bytes,
                            std::size_t index) {
    (void)direction;
    (void)bytes;
    (void)index;
    return Action::deliver();
  }
  virtual std::vector<Injection> after_flow(const Transcript& transcript) {
    (void)transcript;
    return {};
  }
};

struct HandshakeResult {
  Transcript transcript;
  Verdict server_verdict;   // last auth verdict the server recorded
  Verdict client_verdict;   // last verdict the client recorded (mutual echo)
  bool accepted = false;    // both sides finished their state machines
  std::uint64_t client_hash_calls = 0;
  std::uint64_t server_hash_calls = 0;
  std::uint64_t bytes_on_wire = 0;
  std::size_t legs = 0;
};

/// Drives one handshake between a fresh client and `server`, passing every
/// leg through `adversary` when one is given. The flow is capped at 64 legs;
/// hitting the cap is recorded as a transcript note. `client_password` lets
/// the wrong-password scenario hand the client a different secret than the
/// store holds. `server` must have been built against `server_counter` for
/// the reported hash totals to line up.
HandshakeResult run_handshake(const ScenarioConfig& config, ServerEndpoint& server,
                              Adversary* adversary, HashCounter& client_counter,
                              HashCounter& server_counter,
                              const std::string& client_password);

/// Convenience form: builds a server around `server_creds` and runs one
/// honest flow. The server realm comes from the client credentials and the
/// server address defaults to 198.51.100.7. Accepts iff the store's password
/// for the user equals the client's.
HandshakeResult run_handshake(const CredentialStore& server_creds,
                              const ClientCredentials& client_creds, Mode mode,
                              std::uint64_t seed);

struct ScenarioResult {
  HandshakeResult handshake;
  std::optional<AttackOutcome> attack;
};

/// Builds the store and server from `config` and dispatches on
/// config.scenario: honest-mutual, honest-selective, wrong-password, replay,
/// forge-ok, tamper-auth, dictionary. Throws SimError{UnknownScenario} for
/// anything else and SimError{BadConfig} for option combinations a scenario
/// cannot honor.
ScenarioResult run_scenario(const ScenarioConfig& config);

std::vector<std::string> scenario_names();

}  // namespace sipmauth

#endif  // SIPMAUTH_SCENARIO_HPP
