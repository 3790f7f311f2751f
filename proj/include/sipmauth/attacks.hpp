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

#ifndef SIPMAUTH_ATTACKS_HPP
#define SIPMAUTH_ATTACKS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sipmauth/session.hpp"
#include "sipmauth/transcript.hpp"

namespace sipmauth {

enum class AttackKind { Replay, ForgeOk, OfflineDictionary, TamperAuthorization };

std::string_view to_token(AttackKind k) noexcept;

struct AttackOutcome {
  AttackKind kind = AttackKind::Replay;
  bool succeeded = false;  // the attacker reached their goal
  VerdictReason defender_reason = VerdictReason::Ok;
  std::string detail;
  std::uint64_t digest_trials = 0;  // dictionary attack work factor
  std::size_t injected_messages = 0;
  // Dictionary only, and only when succeeded.
  std::optional<std::string> recovered_secret;

  nlohmann::json to_json() const;
};

enum class ReplayTarget { SameServer, FreshServer };

/// Re-runs the recorded handshake against live endpoints, then re-sends the
/// captured credentialed INVITE. SameServer injects it into the server that
/// already consumed the nonce; FreshServer into a newly started one, seeded
/// from `seed`, that never issued it. The honest re-run always reuses the
/// victim transcript's own seed, otherwise the captured bytes would not
/// match the reissued nonce. Succeeds when the server answers 200. Throws
/// SimError{NoAuthorizationLeg} when nothing was captured.
AttackOutcome replay_attack(const Transcript& victim, std::uint64_t seed,
                            ReplayTarget target = ReplayTarget::SameServer);

enum class EchoMutation { None, Nonce, Cnonce, Qop, Nc };

std::string_view to_token(EchoMutation m) noexcept;
std::optional<EchoMutation> echo_mutation_from_token(std::string_view token) noexcept;

/// Adversary-in-the-middle on the final leg: the genuine 200 OK is dropped
/// and a forgery with one echo field altered is delivered instead. None
/// relays the genuine bytes untouched, which the client necessarily accepts.
/// Mutual transcripts only; throws SimError{NotMutualMode} otherwise.
AttackOutcome forge_ok_attack(const Transcript& victim, EchoMutation mutation);

/// Fields the in-path adversary can rewrite inside the Authorization header.
enum class TamperTarget { Response, Nc, Serverip, Qop, Username };

std::string_view to_token(TamperTarget t) noexcept;
std::optional<TamperTarget> tamper_target_from_token(std::string_view token) noexcept;

/// Rewrites one field of the credentialed INVITE in flight and reports how
/// the server classified the result.
AttackOutcome tamper_authorization_attack(const Transcript& victim,
                                          TamperTarget target);

/// Offline guessing against a captured challenge/response pair. Needs the
/// 401 and the credentialed INVITE in the transcript, otherwise throws
/// SimError{IncompleteTranscript}. Tries candidates in order; digest_trials
/// counts attempted passwords. Works against all three modes: nothing in the
/// exchange is secret except the password itself.
AttackOutcome offline_dictionary_attack(const Transcript& victim,
                                        const std::vector<std::string>& wordlist);

/// One candidate per line; blank lines and '#' comments skipped.
std::vector<std::string> load_wordlist(const std::string& path);

/// Candidates used when no wordlist file is supplied.
const std::vector<std::string>& default_wordlist();

}  // namespace sipmauth

#endif  // SIPMAUTH_ATTACKS_HPP
