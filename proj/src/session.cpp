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

#include "sipmauth/session.hpp"

#include <algorithm>

#include "sipmauth/auth_params.hpp"

namespace sipmauth {

namespace {

const char* kCopiedHeaders[] = {"Via", "From", "To", "Call-ID", "CSeq"};

/// Response skeleton: copy the dialog headers of `request` in their original
/// order, then a zero Content-Length.
SipMessage make_response(int status, std::string reason, const SipMessage& request) {
  SipMessage resp = SipMessage::response(status, std::move(reason));
  for (const Header& h : request.headers) {
    for (const char* name : kCopiedHeaders) {
      if (header_name_equal(h.name, name)) {
        resp.headers.push_back(h);
        break;
      }
    }
  }
  resp.headers.push_back(Header{"Content-Length", "0"});
  return resp;
}

std::optional<std::uint64_t> parse_nc(const std::string& nc) {
  if (nc.size() != 8) return std::nullopt;
  std::uint64_t value = 0;
  for (char c : nc) {
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else return std::nullopt;
    value = (value << 4) | static_cast<std::uint64_t>(digit);
  }
  return value;
}

std::string bump_cseq(const std::string& cseq) {
  std::size_t sp = cseq.find(' ');
  if (sp == std::string::npos) return cseq;
  std::uint64_t seq = 0;
  for (std::size_t i = 0; i < sp; ++i) {
    char c = cseq[i];
    if (c < '0' || c > '9') return cseq;
    seq = seq * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return std::to_string(seq + 1) + cseq.substr(sp);
}

std::string method_token_of(const SipMessage& msg) {
  return std::string(to_token(msg.method));
}

}  // namespace

std::string_view to_token(Mode m) noexcept {
  switch (m) {
    case Mode::Legacy: return "legacy";
    case Mode::Mutual: return "mutual";
    case Mode::Selective: return "selective";
  }
  return "mutual";
}

std::optional<Mode> mode_from_token(std::string_view token) noexcept {
  if (token == "legacy") return Mode::Legacy;
  if (token == "mutual") return Mode::Mutual;
  if (token == "selective") return Mode::Selective;
  return std::nullopt;
}

std::string_view to_token(VerdictReason r) noexcept {
  switch (r) {
    case VerdictReason::Ok: return "ok";
    case VerdictReason::BadResponse: return "bad_response";
    case VerdictReason::NonceMismatch: return "nonce_mismatch";
    case VerdictReason::QopMismatch: return "qop_mismatch";
    case VerdictReason::NcMismatch: return "nc_mismatch";
    case VerdictReason::ReplayDetected: return "replay_detected";
    case VerdictReason::UnknownUser: return "unknown_user";
    case VerdictReason::IpMismatch: return "ip_mismatch";
    case VerdictReason::EchoMismatch: return "echo_mismatch";
  }
  return "ok";
}

bool NonceLedger::consumed(const std::string& nonce, std::uint64_t nc) const {
  auto it = highest_.find(nonce);
  return it != highest_.end() && nc <= it->second;
}

void NonceLedger::mark(const std::string& nonce, std::uint64_t nc) {
  auto [it, inserted] = highest_.try_emplace(nonce, nc);
  if (!inserted && nc > it->second) it->second = nc;
}

std::optional<std::uint64_t> NonceLedger::highest(const std::string& nonce) const {
  auto it = highest_.find(nonce);
  if (it == highest_.end()) return std::nullopt;
  return it->second;
}

ChallengeResult server_make_challenge(Rng& rng, const ServerConfig& config,
                                      const SipMessage& invite, Mode mode,
                                      std::shared_ptr<NonceLedger> ledger) {
  const std::string* call_id = invite.find_header("Call-ID");
  if (!call_id) {
    throw SessionError(SessionErrc::MissingCallId, "INVITE carries no Call-ID header");
  }

  ServerSessionState state;
  state.call_id = *call_id;
  state.mode = mode;
  state.issued_nonce = rng.hex(16);
  state.server_ip = config.server_ip;
  state.realm = config.realm;
  state.ledger = ledger ? std::move(ledger) : std::make_shared<NonceLedger>();

  AuthParams params;
  params.realm = config.realm;
  params.nonce = state.issued_nonce;
  params.algorithm = "MD5";
  if (mode != Mode::Legacy) {
    params.qop = {"auth", "auth-int"};
    params.serverip = config.server_ip;
    params.nc = format_nc(state.issued_nc);
    state.issued_qop = params.qop;
  }

  SipMessage challenge = make_response(401, "Unauthorized", invite);
  // Keep WWW-Authenticate ahead of Content-Length.
  challenge.headers.insert(challenge.headers.end() - 1,
                           Header{std::string(to_header_name(AuthHeader::WwwAuthenticate)),
                                  serialize_auth_params(params, AuthHeader::WwwAuthenticate)});
  return ChallengeResult{std::move(challenge), std::move(state)};
}

AuthorizeResult client_handle_challenge(const ClientCredentials& creds, Mode mode,
                                        const SipMessage& original_invite,
                                        const SipMessage& challenge, Rng& rng,
                                        HashCounter* counter) {
  const std::string* header = challenge.find_header(
      to_header_name(AuthHeader::WwwAuthenticate));
  if (!header) {
    throw SessionError(SessionErrc::UnparseableChallenge,
                       "401 carries no WWW-Authenticate header");
  }
  AuthParams offered;
  try {
    offered = parse_auth_params(*header);
  } catch (const ParseError& err) {
    throw SessionError(SessionErrc::UnparseableChallenge, err.what());
  }
  if (!offered.nonce) {
    throw SessionError(SessionErrc::UnparseableChallenge, "challenge has no nonce");
  }

  ClientSessionState state;
  const std::string* call_id = challenge.find_header("Call-ID");
  if (!call_id) call_id = original_invite.find_header("Call-ID");
  state.call_id = call_id ? *call_id : std::string();
  state.mode = mode;
  state.saved_nonce = *offered.nonce;
  state.phase = ClientPhase::AwaitingOk;

  const std::string realm = offered.realm.value_or(creds.realm);
  const std::string uri = original_invite.request_uri;
  const std::string method = method_token_of(original_invite);

  AuthParams answer;
  answer.username = creds.username;
  answer.realm = realm;
  answer.nonce = state.saved_nonce;
  answer.uri = uri;
  answer.algorithm = "MD5";

  if (mode == Mode::Legacy) {
    HexDigest ha1 = h_a1(creds.username, realm, creds.password, counter);
    HexDigest ha2 = h_a2(method, uri, counter);
    answer.response = response_legacy(ha1, state.saved_nonce, ha2, counter).str();
  } else {
    if (std::find(offered.qop.begin(), offered.qop.end(), "auth") == offered.qop.end()) {
      if (offered.qop.empty()) {
        throw SessionError(SessionErrc::UnparseableChallenge,
                           "challenge offers no qop in a qop-requiring mode");
      }
      throw SessionError(SessionErrc::UnsupportedQop,
                         "challenge qop list has no \"auth\"");
    }
    if (!offered.nc) {
      throw SessionError(SessionErrc::UnparseableChallenge, "challenge has no nc");
    }
    if (!offered.serverip) {
      throw SessionError(SessionErrc::UnparseableChallenge, "challenge has no serverip");
    }
    auto nc_value = parse_nc(*offered.nc);
    if (!nc_value || *nc_value == 0) {
      throw SessionError(SessionErrc::UnparseableChallenge,
                         "challenge nc is not a positive 8-digit hex count");
    }
    state.saved_qop = "auth";
    state.saved_server_ip = *offered.serverip;
    state.nc_counter = *nc_value;
    if (mode == Mode::Mutual) state.generated_cnonce = rng.hex(4);

    DigestInputs inputs;
    inputs.username = creds.username;
    inputs.realm = realm;
    inputs.password = creds.password;
    inputs.method = method;
    inputs.digest_uri = uri;
    inputs.nonce = state.saved_nonce;
    inputs.nc = *offered.nc;
    inputs.qop = state.saved_qop;
    if (mode == Mode::Mutual) inputs.cnonce = state.generated_cnonce;
    answer.response = response_qop(inputs, counter).str();

    answer.qop = {state.saved_qop};
    answer.nc = *offered.nc;
    answer.serverip = state.saved_server_ip;
    if (mode == Mode::Mutual) answer.cnonce = state.generated_cnonce;
  }

  SipMessage request = original_invite;
  if (std::string* cseq = request.find_header_mut("CSeq")) *cseq = bump_cseq(*cseq);
  request.set_header(std::string(to_header_name(AuthHeader::Authorization)),
                     serialize_auth_params(answer, AuthHeader::Authorization));
  return AuthorizeResult{std::move(request), std::move(state)};
}

VerifyResult server_verify_authorization(ServerSessionState& state,
                                         const CredentialStore& store,
                                         const SipMessage& request,
                                         HashCounter* counter) {
  if (state.phase != ServerPhase::AwaitingAuth) {
    throw SessionError(SessionErrc::InvalidPhase,
                       "verify called outside AwaitingAuth");
  }

  // Any failure terminates the session; the caller gets a 403 to send.
  auto rejected = [&](VerdictReason reason, std::string detail) {
    state.phase = ServerPhase::Terminated;
    return VerifyResult{Verdict::reject(reason, std::move(detail)),
                        make_response(403, "Forbidden", request)};
  };

  const std::string* header = request.find_header(
      to_header_name(AuthHeader::Authorization));
  if (!header) {
    return rejected(VerdictReason::BadResponse, "request carries no Authorization header");
  }
  AuthParams params;
  try {
    params = parse_auth_params(*header);
  } catch (const ParseError& err) {
    return rejected(VerdictReason::BadResponse,
                    std::string("unparseable Authorization header: ") + err.what());
  }

  // Cheapest checks first; the digest is computed only after every
  // structural check has passed, so a stale nonce costs zero hash calls.
  if (!params.username) {
    return rejected(VerdictReason::UnknownUser, "no username in Authorization");
  }
  auto credential = store.find(*params.username);
  if (!credential) {
    return rejected(VerdictReason::UnknownUser,
                    "username \"" + *params.username + "\" not provisioned");
  }

  if (!params.nonce || *params.nonce != state.issued_nonce) {
    return rejected(VerdictReason::NonceMismatch,
                    "nonce differs from the one issued for this dialog");
  }

  std::uint64_t nc_value = 0;
  if (state.mode != Mode::Legacy) {
    if (params.qop.size() != 1 || params.qop.front() != "auth") {
      return rejected(VerdictReason::QopMismatch,
                      "qop echoed back is not the offered \"auth\"");
    }
    if (!params.nc) {
      return rejected(VerdictReason::NcMismatch, "nc missing or malformed");
    }
    auto parsed = parse_nc(*params.nc);
    if (!parsed || *parsed == 0) {
      return rejected(VerdictReason::NcMismatch, "nc is not a positive hex count");
    }
    nc_value = *parsed;
    if (state.ledger && state.ledger->consumed(state.issued_nonce, nc_value)) {
      auto highest = state.ledger->highest(state.issued_nonce);
      if (highest && nc_value == *highest) {
        return rejected(VerdictReason::ReplayDetected,
                        "nonce/nc pair already consumed");
      }
      return rejected(VerdictReason::NcMismatch,
                      "nc not strictly above the highest accepted count");
    }
    if (!params.serverip || *params.serverip != state.server_ip) {
      return rejected(VerdictReason::IpMismatch,
                      "serverip echoed back differs from the challenge");
    }
  }

  if (!params.uri || !params.response) {
    return rejected(VerdictReason::BadResponse, "Authorization lacks uri or response");
  }

  HexDigest expected;
  if (state.mode == Mode::Legacy) {
    HexDigest ha1 = h_a1(*params.username, credential->realm, credential->password,
                         counter);
    HexDigest ha2 = h_a2(method_token_of(request), *params.uri, counter);
    expected = response_legacy(ha1, state.issued_nonce, ha2, counter);
  } else {
    DigestInputs inputs;
    inputs.username = *params.username;
    inputs.realm = credential->realm;
    inputs.password = credential->password;
    inputs.method = method_token_of(request);
    inputs.digest_uri = *params.uri;
    inputs.nonce = state.issued_nonce;
    inputs.nc = *params.nc;
    inputs.qop = "auth";
    inputs.cnonce = params.cnonce;
    expected = response_qop(inputs, counter);
  }

  HexDigest presented;
  try {
    presented = HexDigest(*params.response);
  } catch (const DigestError&) {
    return rejected(VerdictReason::BadResponse, "response is not 32 hex digits");
  }
  if (!(expected == presented)) {
    return rejected(VerdictReason::BadResponse, "digest mismatch");
  }

  if (state.mode != Mode::Legacy && state.ledger) {
    state.ledger->mark(state.issued_nonce, nc_value);
  }
  state.accepted_username = *params.username;
  state.accepted_cnonce = params.cnonce.value_or("");
  state.accepted_qop = state.mode == Mode::Legacy ? "" : "auth";
  state.accepted_nc = nc_value;
  state.phase = ServerPhase::Authenticated;

  return VerifyResult{Verdict::pass(), server_make_ok_echo(state, request)};
}

SipMessage server_make_ok_echo(const ServerSessionState& state,
                               const SipMessage& request) {
  if (state.phase != ServerPhase::Authenticated) {
    throw SessionError(SessionErrc::InvalidPhase,
                       "200 OK echo requested before authentication");
  }
  SipMessage ok = make_response(200, "OK", request);
  // A client that sent no cnonce asked for the selective flow: plain 200 OK.
  if (state.mode != Mode::Legacy && !state.accepted_cnonce.empty()) {
    AuthParams echo;
    echo.qop = {state.accepted_qop};
    echo.nonce = state.issued_nonce;
    echo.nc = format_nc(state.accepted_nc);
    echo.cnonce = state.accepted_cnonce;
    ok.headers.insert(ok.headers.end() - 1,
                      Header{std::string(to_header_name(AuthHeader::AuthenticationInfo)),
                             serialize_auth_params(echo, AuthHeader::AuthenticationInfo)});
  }
  return ok;
}

Verdict client_verify_ok(ClientSessionState& state, const SipMessage& ok) {
  if (state.phase != ClientPhase::AwaitingOk) {
    throw SessionError(SessionErrc::InvalidPhase,
                       "client_verify_ok called outside AwaitingOk");
  }
  // Any mismatch ends the dialog on the client side too.
  auto rejected = [&](std::string detail) {
    state.phase = ClientPhase::Terminated;
    return Verdict::reject(VerdictReason::EchoMismatch, std::move(detail));
  };

  if (ok.kind != SipMessage::Kind::Response || ok.status != 200) {
    return rejected("reply is not a 200 OK");
  }
  const std::string* call_id = ok.find_header("Call-ID");
  if (!call_id || *call_id != state.call_id) {
    return rejected("200 OK belongs to a different dialog");
  }

  if (state.mode != Mode::Mutual) {
    state.phase = ClientPhase::Done;
    return Verdict::pass();
  }

  const std::string* header = ok.find_header(
      to_header_name(AuthHeader::AuthenticationInfo));
  if (!header) {
    return rejected("200 OK carries no Authentication-Info header");
  }
  AuthParams echo;
  try {
    echo = parse_auth_params(*header);
  } catch (const ParseError& err) {
    return rejected(std::string("unparseable echo header: ") + err.what());
  }
  if (!echo.nonce || *echo.nonce != state.saved_nonce) {
    return rejected("echoed nonce differs");
  }
  if (!echo.cnonce || *echo.cnonce != state.generated_cnonce) {
    return rejected("echoed cnonce differs");
  }
  if (echo.qop.size() != 1 || echo.qop.front() != state.saved_qop) {
    return rejected("echoed qop differs");
  }
  std::optional<std::uint64_t> nc_value;
  if (echo.nc) nc_value = parse_nc(*echo.nc);
  if (!nc_value || *nc_value != state.nc_counter) {
    return rejected("echoed nc differs");
  }
  state.phase = ClientPhase::ServerAuthenticated;
  return Verdict::pass();
}

}  // namespace sipmauth
