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

#ifndef SIPMAUTH_SESSION_HPP
#define SIPMAUTH_SESSION_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sipmauth/credentials.hpp"
#include "sipmauth/digest.hpp"
#include "sipmauth/errors.hpp"
#include "sipmauth/message.hpp"
#include "sipmauth/rng.hpp"

namespace sipmauth {

/// Authentication mode negotiated out of band.
///
/// Legacy   - plain digest: no qop, no nc, no server echo. Kept as the
///            baseline the other two are measured against.
/// Mutual   - challenge carries qop/nc/serverip, client adds a cnonce, the
///            200 OK echoes session parameters back so the client can
///            authenticate the server.
/// Selective - mutual minus the client nonce: no cnonce is generated and the
///            200 OK carries no echo. Cheaper, client forgoes server auth.
enum class Mode { Legacy, Mutual, Selective };

std::string_view to_token(Mode m) noexcept;
std::optional<Mode> mode_from_token(std::string_view token) noexcept;

/// Why a verification accepted or rejected. Exactly one reason per verdict.
enum class VerdictReason {
  Ok,
  BadResponse,     // digest mismatch
  NonceMismatch,   // nonce is not one this server issued / not this session's
  QopMismatch,     // qop echoed back differs from the offered value
  NcMismatch,      // nonce count malformed or not strictly increasing
  ReplayDetected,  // nonce/nc pair already consumed
  UnknownUser,     // username not in the credential store
  IpMismatch,      // serverip echoed back differs from the challenge
  EchoMismatch,    // 200 OK echo fields differ from what the client sent
};

std::string_view to_token(VerdictReason r) noexcept;

struct Verdict {
  bool accepted = false;
  VerdictReason reason = VerdictReason::Ok;
  std::string detail;

  bool ok() const { return accepted; }
  static Verdict pass() { return Verdict{true, VerdictReason::Ok, {}}; }
  static Verdict reject(VerdictReason r, std::string detail_text) {
    return Verdict{false, r, std::move(detail_text)};
  }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Tracks which (nonce, nc) pairs a server has already accepted. Shared
/// across every session a server endpoint owns: a nonce replayed into a new
/// session hits the same ledger that consumed it in the old one.
class NonceLedger {
public:
  /// True when `nc` has already been used for `nonce`, i.e. nc is not
  /// strictly greater than the highest accepted count.
  bool consumed(const std::string& nonce, std::uint64_t nc) const;

  /// Records `nc` as the highest accepted count for `nonce`.
  void mark(const std::string& nonce, std::uint64_t nc);

  std::optional<std::uint64_t> highest(const std::string& nonce) const;

private:
  std::map<std::string, std::uint64_t> highest_;
};

enum class ServerPhase { AwaitingAuth, Authenticated, Terminated };
enum class ClientPhase {
  AwaitingChallenge,
  AwaitingOk,
  ServerAuthenticated,
  Done,
  Terminated,
};

struct ServerConfig {
  std::string realm;
  std::string server_ip;
};

/// Per-dialog server state, created when the challenge goes out.
struct ServerSessionState {
  std::string call_id;
  Mode mode = Mode::Mutual;
  std::string issued_nonce;
  std::vector<std::string> issued_qop;  // empty in legacy mode
  std::uint64_t issued_nc = 1;
  std::string server_ip;
  std::string realm;
  // Filled in by a successful verify, echoed back in the 200 OK.
  std::string accepted_username;
  std::string accepted_cnonce;
  std::string accepted_qop;
  std::uint64_t accepted_nc = 0;
  ServerPhase phase = ServerPhase::AwaitingAuth;
  std::shared_ptr<NonceLedger> ledger;
};

struct ClientCredentials {
  std::string username;
  std::string realm;
  std::string password;
};

/// Per-dialog client state, created when the challenge comes back.
struct ClientSessionState {
  std::string call_id;
  Mode mode = Mode::Mutual;
  std::string saved_nonce;
  std::string saved_qop;        // the value we answered with, empty in legacy
  std::string saved_server_ip;  // empty in legacy
  std::uint64_t nc_counter = 1;
  std::string generated_cnonce;  // empty in legacy and selective
  ClientPhase phase = ClientPhase::AwaitingChallenge;
};

struct VerifyResult {
  Verdict verdict;
  SipMessage reply;
};

/// Builds the 401 challenge for `invite` and the session state that goes
/// with it. Legacy mode omits qop/nc/serverip. The nonce is 16 bytes of rng
/// output (32 hex digits). Throws SessionError{MissingCallId} when the
/// INVITE has no Call-ID header.
struct ChallengeResult {
  SipMessage challenge;
  ServerSessionState state;
};
ChallengeResult server_make_challenge(Rng& rng, const ServerConfig& config,
                                      const SipMessage& invite, Mode mode,
                                      std::shared_ptr<NonceLedger> ledger = nullptr);

/// Consumes a 401, produces the authenticated re-INVITE plus client state.
/// Mutual mode generates a 4-byte (8 hex digit) cnonce; selective does not.
/// Throws SessionError{UnparseableChallenge} when the 401 lacks a usable
/// WWW-Authenticate header and SessionError{UnsupportedQop} when the offered
/// qop list contains no "auth".
struct AuthorizeResult {
  SipMessage request;
  ClientSessionState state;
};
AuthorizeResult client_handle_challenge(const ClientCredentials& creds, Mode mode,
                                        const SipMessage& original_invite,
                                        const SipMessage& challenge, Rng& rng,
                                        HashCounter* counter = nullptr);

/// Verifies the authenticated request against `state` and the credential
/// store. Checks run cheapest first and stop at the first failure: username,
/// nonce, qop, nc/ledger, serverip, then the digest itself. A nonce mismatch
/// therefore costs zero hash calls. On acceptance the ledger is updated and
/// the state advances to Authenticated; the reply carries the echo header
/// when the request had a cnonce. Any failure terminates the session and the
/// reply is a 403. Throws SessionError{InvalidPhase} outside AwaitingAuth,
/// so a second call on the same state always throws.
VerifyResult server_verify_authorization(ServerSessionState& state,
                                         const CredentialStore& store,
                                         const SipMessage& request,
                                         HashCounter* counter = nullptr);

/// Builds the 200 OK for an authenticated session. When the accepted request
/// carried a cnonce the reply echoes nonce/cnonce/qop/nc in an
/// Authentication-Info header; a cnonce-less (selective) or legacy session
/// gets a plain 200 OK. `request` supplies the dialog headers to copy.
/// Throws SessionError{InvalidPhase} unless phase == Authenticated.
SipMessage server_make_ok_echo(const ServerSessionState& state,
                               const SipMessage& request);

/// Client-side check of the 200 OK. Mutual mode requires the echo header to
/// return exactly the nonce/cnonce/qop/nc the client sent; legacy and
/// selective accept any 200 OK for the dialog. Advances phase to
/// ServerAuthenticated (mutual) or Done on success, Terminated on mismatch.
Verdict client_verify_ok(ClientSessionState& state, const SipMessage& ok);

}  // namespace sipmauth

#endif  // SIPMAUTH_SESSION_HPP
