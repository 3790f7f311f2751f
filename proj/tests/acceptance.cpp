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

// Acceptance gate: one criterion per line, PASS or FAIL, exit code equals
// the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_md5.hpp"
#include "sipmauth/attacks.hpp"
#include "sipmauth/auth_params.hpp"
#include "sipmauth/bench.hpp"
#include "sipmauth/credentials.hpp"
#include "sipmauth/digest.hpp"
#include "sipmauth/message.hpp"
#include "sipmauth/scenario.hpp"

using namespace sipmauth;
using Clock = std::chrono::steady_clock;

namespace {

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
      .count();
}

ScenarioConfig scenario_config(const std::string& scenario, Mode mode,
                               std::uint64_t seed) {
  ScenarioConfig config;
  config.scenario = scenario;
  config.mode = mode;
  config.seed = seed;
  return config;
}

// --- criterion 1 -----------------------------------------------------------

std::string golden_digest_vectors() {
  const auto start = Clock::now();

  DigestInputs in;
  in.username = "Mufasa";
  in.realm = "testrealm@host.com";
  in.password = "Circle Of Life";
  in.method = "GET";
  in.digest_uri = "/dir/index.html";
  in.nonce = "dcd98b7102dd2f0e8b11d0f600bfb0c093";
  in.nc = "00000001";
  in.cnonce = "0a4f113b";
  in.qop = "auth";
  const std::string qop_got = response_qop(in).str();
  if (qop_got != "6629fae49393a05397450978507c4ef1") {
    return "qop-auth vector computed " + qop_got;
  }

  const std::string legacy_got =
      response_legacy(h_a1("Mufasa", "testrealm@host.com", "Circle Of Life"),
                      "dcd98b7102dd2f0e8b11d0f600bfb0",
                      h_a2("INVITE", "sip:bob@biloxi.com"))
          .str();
  if (legacy_got != "4eea32df75e552866b678a3d2f3ec329") {
    return "legacy vector computed " + legacy_got;
  }

  // Independent reference implementation, fed the documented digest inputs.
  const std::string ref_ha1 = oracle::md5_hex("Mufasa:testrealm@host.com:Circle Of Life");
  const std::string ref_ha2 = oracle::md5_hex("GET:/dir/index.html");
  const std::string ref_qop = oracle::md5_hex(
      ref_ha1 + ":dcd98b7102dd2f0e8b11d0f600bfb0c093:00000001:0a4f113b:auth:" + ref_ha2);
  if (ref_qop != qop_got) return "reference MD5 disagrees on the qop vector";
  const std::string ref_legacy = oracle::md5_hex(
      ref_ha1 + ":dcd98b7102dd2f0e8b11d0f600bfb0:" +
      oracle::md5_hex("INVITE:sip:bob@biloxi.com"));
  if (ref_legacy != legacy_got) return "reference MD5 disagrees on the legacy vector";

  if (ms_since(start) >= 1000) return "exceeded the 1 s budget";
  return "";
}

// --- criterion 2 -----------------------------------------------------------

std::string handshake_soundness() {
  const auto start = Clock::now();
  std::mt19937_64 gen(0x50FD);
  const Mode modes[] = {Mode::Legacy, Mode::Mutual, Mode::Selective};
  int false_accepts = 0;
  int false_rejects = 0;

  for (int i = 0; i < 1000; ++i) {
    const std::string user = "user" + std::to_string(gen() % 100000);
    const std::string store_pw = "pw-" + std::to_string(gen());
    const bool should_match = gen() % 2 == 0;
    const std::string client_pw = should_match ? store_pw : store_pw + "-x";

    CredentialStore store;
    store.add(user, "sip.example.com", store_pw);
    const HandshakeResult result = run_handshake(
        store, ClientCredentials{user, "sip.example.com", client_pw}, modes[i % 3],
        gen());
    if (result.accepted && !should_match) ++false_accepts;
    if (!result.accepted && should_match) ++false_rejects;
  }

  if (false_accepts || false_rejects) {
    std::ostringstream out;
    out << false_accepts << " false accepts, " << false_rejects
        << " false rejects out of 1000";
    return out.str();
  }
  if (ms_since(start) >= 10000) return "exceeded the 10 s budget";
  return "";
}

// --- criterion 3 -----------------------------------------------------------

std::string replay_defense() {
  const auto start = Clock::now();
  int successes = 0;
  int bad_reasons = 0;

  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    ScenarioConfig config = scenario_config(
        "replay", seed % 2 == 0 ? Mode::Mutual : Mode::Selective, seed);
    config.mutation = seed % 4 < 2 ? "same_server" : "fresh_server";
    const ScenarioResult result = run_scenario(config);
    if (!result.attack) return "replay scenario produced no attack outcome";
    if (result.attack->succeeded) ++successes;
    if (result.attack->defender_reason != VerdictReason::ReplayDetected &&
        result.attack->defender_reason != VerdictReason::NonceMismatch) {
      ++bad_reasons;
    }
  }

  if (successes) return std::to_string(successes) + " of 1000 replays were accepted";
  if (bad_reasons) {
    return std::to_string(bad_reasons) +
           " rejections used a reason other than ReplayDetected/NonceMismatch";
  }
  if (ms_since(start) >= 10000) return "exceeded the 10 s budget";
  return "";
}

// --- criterion 4 -----------------------------------------------------------

std::string echo_integrity() {
  const EchoMutation mutations[] = {EchoMutation::Nonce, EchoMutation::Cnonce,
                                    EchoMutation::Qop, EchoMutation::Nc};
  int accepted_forgeries = 0;
  int rejected_relays = 0;

  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const ScenarioResult honest =
        run_scenario(scenario_config("honest-mutual", Mode::Mutual, seed));
    if (!honest.handshake.accepted) return "honest run rejected at seed " + std::to_string(seed);
    const Transcript& transcript = honest.handshake.transcript;

    for (EchoMutation mutation : mutations) {
      const AttackOutcome outcome = forge_ok_attack(transcript, mutation);
      if (outcome.succeeded ||
          outcome.defender_reason != VerdictReason::EchoMismatch) {
        ++accepted_forgeries;
      }
    }
    // The documented limitation: a relay of the genuine bytes must pass,
    // the client cannot tell an on-path forwarder from the wire itself.
    if (!forge_ok_attack(transcript, EchoMutation::None).succeeded) {
      ++rejected_relays;
    }
  }

  if (accepted_forgeries) {
    return std::to_string(accepted_forgeries) + " of 4000 forged echoes slipped through";
  }
  if (rejected_relays) {
    return std::to_string(rejected_relays) + " unmutated relays were rejected";
  }
  return "";
}

// --- criterion 5 -----------------------------------------------------------

std::string selective_mode() {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ScenarioResult selective =
        run_scenario(scenario_config("honest-selective", Mode::Selective, seed));
    const ScenarioResult mutual =
        run_scenario(scenario_config("honest-mutual", Mode::Mutual, seed));
    if (!selective.handshake.accepted || !mutual.handshake.accepted) {
      return "honest run rejected at seed " + std::to_string(seed);
    }

    for (const TranscriptEvent& event : selective.handshake.transcript.events) {
      if (event.wire_bytes.find("cnonce") != std::string::npos) {
        return "cnonce appeared on the wire in selective mode, seed " +
               std::to_string(seed);
      }
    }
    const SipMessage ok =
        parse_message(selective.handshake.transcript.events[3].wire_bytes);
    if (ok.find_header("Authentication-Info") != nullptr) {
      return "selective 200 OK carried an echo header, seed " + std::to_string(seed);
    }
    if (selective.handshake.bytes_on_wire >= mutual.handshake.bytes_on_wire) {
      return "selective was not strictly cheaper at seed " + std::to_string(seed);
    }
  }
  return "";
}

// --- criterion 6 -----------------------------------------------------------

std::string offline_attack_fact_check() {
  const std::vector<std::string>& words = default_wordlist();
  for (Mode mode : {Mode::Legacy, Mode::Mutual, Mode::Selective}) {
    for (std::size_t idx = 0; idx < words.size(); ++idx) {
      ScenarioConfig config = scenario_config("dictionary", mode, 17 + idx);
      config.password = words[idx];
      const ScenarioResult result = run_scenario(config);
      if (!result.attack || !result.attack->succeeded ||
          result.attack->recovered_secret != words[idx]) {
        return "listed password \"" + words[idx] + "\" not recovered in mode " +
               std::string(to_token(mode));
      }
      if (result.attack->digest_trials != idx + 1) {
        return "expected " + std::to_string(idx + 1) + " trials for \"" + words[idx] +
               "\", saw " + std::to_string(result.attack->digest_trials);
      }
    }

    ScenarioConfig absent = scenario_config("dictionary", mode, 99);
    absent.password = "not-on-any-list-7f3a";
    const ScenarioResult result = run_scenario(absent);
    if (!result.attack || result.attack->succeeded) {
      return "unlisted password was \"recovered\" in mode " +
             std::string(to_token(mode));
    }
    if (result.attack->digest_trials != words.size()) {
      return "miss should cost " + std::to_string(words.size()) + " trials, saw " +
             std::to_string(result.attack->digest_trials);
    }
  }
  return "";
}

// --- criterion 7 -----------------------------------------------------------

std::string determinism() {
  for (const std::string& name : scenario_names()) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      const ScenarioConfig config = scenario_config(name, Mode::Mutual, seed);
      const ScenarioResult a = run_scenario(config);
      const ScenarioResult b = run_scenario(config);
      if (a.handshake.transcript.to_json().dump() !=
          b.handshake.transcript.to_json().dump()) {
        return "transcript of " + name + " differed across runs at seed " +
               std::to_string(seed);
      }
      if (a.attack.has_value() != b.attack.has_value() ||
          (a.attack && a.attack->to_json().dump() != b.attack->to_json().dump())) {
        return "attack outcome of " + name + " differed across runs at seed " +
               std::to_string(seed);
      }
    }
  }

  BenchOptions options;
  options.handshakes = 40;
  options.seed = 12;
  options.attack_samples = 3;
  options.workers = 1;
  const std::string single = run_bench(options).to_json().at("deterministic").dump();
  options.workers = 4;
  const std::string sharded = run_bench(options).to_json().at("deterministic").dump();
  if (single != sharded) {
    return "bench counter fields changed with the worker count";
  }
  return "";
}

// --- criterion 8 -----------------------------------------------------------

constexpr char kVisible[] =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    "!#$%&'()*+,-./:;<=>?@[]^_`{|}~";

std::string random_visible(std::mt19937_64& gen, std::size_t min_len,
                           std::size_t max_len, bool allow_inner_space = false) {
  std::uniform_int_distribution<std::size_t> len_dist(min_len, max_len);
  std::uniform_int_distribution<std::size_t> char_dist(0, sizeof(kVisible) - 2);
  std::string out(len_dist(gen), '\0');
  for (char& c : out) c = kVisible[char_dist(gen)];
  if (allow_inner_space && out.size() > 2) {
    std::uniform_int_distribution<std::size_t> pos(1, out.size() - 2);
    out[pos(gen)] = ' ';
  }
  return out;
}

constexpr char kNameChars[] =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_.!#$%&*+^`|~";

std::string random_name(std::mt19937_64& gen, std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_dist(min_len, max_len);
  std::uniform_int_distribution<std::size_t> char_dist(0, sizeof(kNameChars) - 2);
  std::string out(len_dist(gen), '\0');
  for (char& c : out) c = kNameChars[char_dist(gen)];
  return out;
}

std::string random_bytes(std::mt19937_64& gen, std::size_t max_len) {
  // Mostly short, occasionally up to the 64 KiB input bound.
  std::uniform_int_distribution<std::size_t> short_len(0, 160);
  std::uniform_int_distribution<std::size_t> long_len(0, max_len);
  std::size_t len = gen() % 1000 == 0 ? long_len(gen) : short_len(gen);
  std::uniform_int_distribution<int> byte_dist(0, 255);
  std::string out(len, '\0');
  for (char& c : out) c = static_cast<char>(byte_dist(gen));
  return out;
}

SipMessage random_valid_message(std::mt19937_64& gen) {
  SipMessage msg;
  if (gen() % 2 == 0) {
    const Method methods[] = {Method::Invite, Method::Ack,     Method::Bye,
                              Method::Cancel, Method::Options, Method::Register};
    std::string uri = random_visible(gen, 1, 24);
    msg = SipMessage::request(methods[gen() % 6], std::move(uri));
  } else {
    std::uniform_int_distribution<int> status(100, 699);
    msg = SipMessage::response(status(gen), random_visible(gen, 0, 16, true));
  }
  const std::size_t header_count = gen() % 6;
  for (std::size_t i = 0; i < header_count; ++i) {
    // An X- prefix keeps generated names clear of Content-Length.
    msg.add_header("X-" + random_name(gen, 0, 8), random_visible(gen, 0, 20, true));
  }
  if (gen() % 2 == 0) {
    std::uniform_int_distribution<int> byte_dist(0, 255);
    std::string body(gen() % 40, '\0');
    for (char& c : body) c = static_cast<char>(byte_dist(gen));
    msg.body = std::move(body);
    if (gen() % 2 == 0) {
      msg.add_header("Content-Length", std::to_string(msg.body.size()));
    }
  }
  return msg;
}

AuthParams random_valid_params(std::mt19937_64& gen) {
  static const char kHex[] = "0123456789abcdef";
  auto hex = [&](std::size_t n) {
    std::string out(n, '0');
    for (char& c : out) c = kHex[gen() % 16];
    return out;
  };
  AuthParams params;
  params.realm = random_visible(gen, 1, 12);
  if (gen() % 2) params.username = random_visible(gen, 1, 10);
  if (gen() % 2) params.nonce = hex(gen() % 40 + 1);
  if (gen() % 2) params.qop = gen() % 2 ? std::vector<std::string>{"auth"}
                                        : std::vector<std::string>{"auth", "auth-int"};
  if (gen() % 2) params.nc = hex(8);
  if (gen() % 2) params.cnonce = hex(8);
  if (gen() % 2) params.serverip = random_visible(gen, 1, 15);
  if (gen() % 2) params.uri = random_visible(gen, 1, 20);
  if (gen() % 2) params.response = hex(32);
  if (gen() % 2) params.algorithm = "MD5";
  if (gen() % 3 == 0) {
    params.extra.push_back(
        Header{"x" + std::to_string(gen() % 1000), random_visible(gen, 0, 12, true)});
  }
  return params;
}

std::string corrupt(std::mt19937_64& gen, std::string bytes) {
  if (bytes.empty()) return bytes;
  std::uniform_int_distribution<std::size_t> pos_dist(0, bytes.size() - 1);
  std::uniform_int_distribution<int> byte_dist(0, 255);
  const int edits = 1 + static_cast<int>(gen() % 3);
  for (int i = 0; i < edits; ++i) {
    bytes[pos_dist(gen)] = static_cast<char>(byte_dist(gen));
  }
  if (gen() % 4 == 0) bytes.resize(pos_dist(gen));
  return bytes;
}

std::string codec_robustness() {
  std::mt19937_64 gen(0xC0DEC);
  constexpr std::size_t kInputs = 1'000'000;
  constexpr std::size_t kMaxLen = 64 * 1024;
  std::size_t fed = 0;
  std::size_t round_trips = 0;

  for (std::size_t i = 0; i < kInputs; ++i, ++fed) {
    const std::size_t bucket = i % 20;
    if (bucket < 6) {
      try {
        parse_message(random_bytes(gen, kMaxLen));
      } catch (const ParseError&) {
      }
    } else if (bucket < 9) {
      try {
        parse_message(corrupt(gen, serialize_message(random_valid_message(gen))));
      } catch (const ParseError&) {
      }
    } else if (bucket < 10) {
      const SipMessage msg = random_valid_message(gen);
      const std::string wire = serialize_message(msg);
      SipMessage reparsed;
      try {
        reparsed = parse_message(wire);
      } catch (const ParseError& err) {
        return "valid message failed to parse at iteration " + std::to_string(i) +
               ": " + err.what();
      }
      if (!(reparsed == msg) || serialize_message(reparsed) != wire) {
        return "message round-trip broke at iteration " + std::to_string(i);
      }
      ++round_trips;
    } else if (bucket < 17) {
      std::string input = random_bytes(gen, kMaxLen);
      if (gen() % 2 == 0) input = "Digest " + input;
      try {
        parse_auth_params(input);
      } catch (const ParseError&) {
      }
    } else if (bucket < 19) {
      const AuthParams params = random_valid_params(gen);
      try {
        parse_auth_params(corrupt(
            gen, serialize_auth_params(params, AuthHeader::AuthenticationInfo)));
      } catch (const ParseError&) {
      }
    } else {
      const AuthParams params = random_valid_params(gen);
      const std::string wire =
          serialize_auth_params(params, AuthHeader::AuthenticationInfo);
      AuthParams reparsed;
      try {
        reparsed = parse_auth_params(wire);
      } catch (const ParseError& err) {
        return "valid auth params failed to parse at iteration " + std::to_string(i) +
               ": " + err.what();
      }
      if (!(reparsed == params)) {
        return "auth-params round-trip broke at iteration " + std::to_string(i);
      }
      ++round_trips;
    }
  }

  if (fed < kInputs) return "fed only " + std::to_string(fed) + " inputs";
  if (round_trips < kInputs / 20) {
    return "only " + std::to_string(round_trips) + " round-trips were exercised";
  }
  return "";
}

// --- criterion 9 -----------------------------------------------------------

std::string instrumented_cost() {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CredentialStore store;
    store.add("alice", "sip.example.com", "pw");
    const HandshakeResult result = run_handshake(
        store, ClientCredentials{"alice", "sip.example.com", "pw"}, Mode::Mutual, seed);
    if (!result.accepted) return "mutual handshake rejected at seed " + std::to_string(seed);
    if (result.client_hash_calls != 3 || result.server_hash_calls != 3) {
      std::ostringstream out;
      out << "seed " << seed << " used " << result.client_hash_calls << " client and "
          << result.server_hash_calls << " server MD5 calls";
      return out.str();
    }
  }
  return "";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria = {
      {"golden-digest-vectors", golden_digest_vectors},
      {"handshake-soundness", handshake_soundness},
      {"replay-defense", replay_defense},
      {"echo-integrity", echo_integrity},
      {"selective-mode", selective_mode},
      {"offline-attack-fact-check", offline_attack_fact_check},
      {"determinism", determinism},
      {"codec-robustness", codec_robustness},
      {"instrumented-cost", instrumented_cost},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = Clock::now();
    std::string why;
    try {
      why = criterion.run();
    } catch (const std::exception& err) {
      why = std::string("unhandled exception: ") + err.what();
    }
    const long long elapsed = static_cast<long long>(ms_since(start));
    if (why.empty()) {
      std::printf("PASS %s (%lld ms)\n", criterion.name, elapsed);
    } else {
      std::printf("FAIL %s: %s\n", criterion.name, why.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures;
}
