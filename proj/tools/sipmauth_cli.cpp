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

#include <cstdint>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sipmauth/attacks.hpp"
#include "sipmauth/bench.hpp"
#include "sipmauth/scenario.hpp"

namespace {

using namespace sipmauth;

nlohmann::json verdict_json(const Verdict& v) {
  return nlohmann::json{{"accepted", v.accepted},
                        {"reason", std::string(to_token(v.reason))},
                        {"detail", v.detail}};
}

void print_verdict(std::ostream& out, const char* who, const Verdict& v) {
  out << who << " verdict: " << to_token(v.reason);
  if (!v.detail.empty()) out << " (" << v.detail << ")";
  out << "\n";
}

nlohmann::json handshake_json(const HandshakeResult& result) {
  return nlohmann::json{
      {"accepted", result.accepted},
      {"server_verdict", verdict_json(result.server_verdict)},
      {"client_verdict", verdict_json(result.client_verdict)},
      {"legs", result.legs},
      {"bytes_on_wire", result.bytes_on_wire},
      {"hash_calls",
       {{"client", result.client_hash_calls}, {"server", result.server_hash_calls}}},
      {"transcript", result.transcript.to_json()},
  };
}

void print_handshake_text(const HandshakeResult& result) {
  std::cout << result.transcript.render_text();
  print_verdict(std::cout, "server", result.server_verdict);
  print_verdict(std::cout, "client", result.client_verdict);
  std::cout << "hash calls: client " << result.client_hash_calls << ", server "
            << result.server_hash_calls << "\n";
  std::cout << "result: " << (result.accepted ? "accepted" : "rejected") << "\n";
}

struct VectorRow {
  const char* name;
  const char* inputs;
  std::function<HexDigest()> compute;
  const char* expected;
};

const char* kTruncNonce = "dcd98b7102dd2f0e8b11d0f600bfb0";
const char* kFullNonce = "dcd98b7102dd2f0e8b11d0f600bfb0c093";

DigestInputs qop_inputs(const char* nonce, bool with_cnonce) {
  DigestInputs in;
  in.username = "Mufasa";
  in.realm = "testrealm@host.com";
  in.password = "Circle Of Life";
  in.method = "GET";
  in.digest_uri = "/dir/index.html";
  in.nonce = nonce;
  in.nc = "00000001";
  in.qop = "auth";
  if (with_cnonce) in.cnonce = "0a4f113b";
  return in;
}

std::vector<VectorRow> vector_rows() {
  return {
      {"md5_empty", "md5(\"\")", [] { return md5_hex(""); },
       "d41d8cd98f00b204e9800998ecf8427e"},
      {"md5_abc", "md5(\"abc\")", [] { return md5_hex("abc"); },
       "900150983cd24fb0d6963f7d28e17f72"},
      {"ha1_empty", "h_a1(\"\", \"\", \"\")", [] { return h_a1("", "", ""); },
       "4501c091b0366d76ea3218b6cfdd8097"},
      {"ha1_mufasa", "h_a1(Mufasa, testrealm@host.com, Circle Of Life)",
       [] { return h_a1("Mufasa", "testrealm@host.com", "Circle Of Life"); },
       "939e7578ed9e3c518a452acee763bce9"},
      {"ha2_get", "h_a2(GET, /dir/index.html)",
       [] { return h_a2("GET", "/dir/index.html"); },
       "39aff3a2bab6126f332b942af96d3366"},
      {"ha2_invite", "h_a2(INVITE, sip:bob@biloxi.com)",
       [] { return h_a2("INVITE", "sip:bob@biloxi.com"); },
       "13a14a3eb5e2c24732a1a04fff543e92"},
      {"ha2_invite_lowercase", "h_a2(invite, sip:bob@biloxi.com)",
       [] { return h_a2("invite", "sip:bob@biloxi.com"); },
       "da677bf569b583fe2e2ec2ec9d30e672"},
      {"legacy_invite",
       "response_legacy(ha1_mufasa, 30-digit nonce, ha2_invite)",
       [] {
         return response_legacy(
             h_a1("Mufasa", "testrealm@host.com", "Circle Of Life"), kTruncNonce,
             h_a2("INVITE", "sip:bob@biloxi.com"));
       },
       "4eea32df75e552866b678a3d2f3ec329"},
      {"qop_auth_cnonce",
       "response_qop(Mufasa/GET, 30-digit nonce, nc 00000001, cnonce 0a4f113b)",
       [] { return response_qop(qop_inputs(kTruncNonce, true)); },
       "10e58fdbf9ae9408e7554c51afd08d1d"},
      {"qop_auth_selective",
       "response_qop(Mufasa/GET, 30-digit nonce, nc 00000001, no cnonce)",
       [] { return response_qop(qop_inputs(kTruncNonce, false)); },
       "e573b62a5616b51e6c2f215ebc107631"},
      {"qop_auth_full_nonce",
       "response_qop(Mufasa/GET, 34-digit nonce, nc 00000001, cnonce 0a4f113b)",
       [] { return response_qop(qop_inputs(kFullNonce, true)); },
       "6629fae49393a05397450978507c4ef1"},
  };
}

const char* kVectorNote =
    "Every value above was fixed with an MD5 oracle independent of this "
    "library. The classic worked example is widely reprinted with a 34-digit "
    "nonce and result 6629fae49393a05397450978507c4ef1; reprints that "
    "truncate the nonce to 30 digits change the result, and some drop digits "
    "from the printed response itself (e.g. the 25-digit "
    "6629faea05397450978507c4ef1), which no MD5 computation can produce.";

int run_vectors(const std::string& format) {
  bool all_ok = true;
  auto rows = vector_rows();
  if (format == "json") {
    nlohmann::json j;
    nlohmann::json arr = nlohmann::json::array();
    for (const VectorRow& row : rows) {
      HexDigest got = row.compute();
      bool ok = got.str() == row.expected;
      all_ok = all_ok && ok;
      arr.push_back(nlohmann::json{{"name", row.name},
                                   {"inputs", row.inputs},
                                   {"digest", got.str()},
                                   {"pinned", row.expected},
                                   {"ok", ok}});
    }
    j["vectors"] = std::move(arr);
    j["note"] = kVectorNote;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const VectorRow& row : rows) {
      HexDigest got = row.compute();
      bool ok = got.str() == row.expected;
      all_ok = all_ok && ok;
      std::cout << (ok ? "ok   " : "FAIL ") << row.name << "  " << got.str()
                << "  " << row.inputs << "\n";
    }
    std::cout << "\n" << kVectorNote << "\n";
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIP digest authentication simulator with mutual verification"};
  app.require_subcommand(1);

  std::string mode_token = "mutual";
  std::uint64_t seed = 1;
  std::string username = "alice";
  std::string password = "circle-of-life";
  std::string realm = "sip.example.com";
  std::string server_ip = "198.51.100.7";
  std::string format = "json";
  std::string creds_path;
  std::string config_path;
  bool wrong_password = false;

  auto add_identity = [&](CLI::App* cmd) {
    cmd->add_option("--username,--user", username, "client username");
    cmd->add_option("--password", password, "client password");
    cmd->add_option("--realm", realm, "protection realm");
    cmd->add_option("--server-ip", server_ip, "address bound into challenges");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
  };
  auto mode_option = [&](CLI::App* cmd) {
    cmd->add_option("--mode", mode_token, "authentication mode")
        ->check(CLI::IsMember({"legacy", "mutual", "selective"}));
  };

  CLI::App* handshake = app.add_subcommand("handshake", "run one honest handshake");
  mode_option(handshake);
  handshake->add_option("--seed", seed, "rng seed");
  handshake->add_option("--config", config_path,
                        "scenario config JSON; explicit flags override it");
  handshake->add_option("--creds", creds_path,
                        "credential file, username:realm:password per line");
  handshake->add_flag("--wrong-password", wrong_password,
                      "client authenticates with a deliberately wrong password");
  add_identity(handshake);

  std::string attack_kind;
  std::string mutation;
  std::string wordlist_path;
  std::string expect;
  CLI::App* attack = app.add_subcommand("attack", "run an adversarial scenario");
  attack->add_option("kind", attack_kind, "attack to run")
      ->check(CLI::IsMember({"replay", "forge-ok", "tamper-auth", "dictionary"}));
  attack->add_option("--seed", seed, "rng seed");
  attack->add_option("--config", config_path,
                     "scenario config JSON; explicit flags override it");
  mode_option(attack);
  attack->add_option("--mutation", mutation,
                     "attack-specific variant (field to mutate or replay target)");
  attack->add_option("--wordlist", wordlist_path, "password candidates, one per line");
  attack->add_option("--expect", expect, "exit 0 only when the outcome matches")
      ->check(CLI::IsMember({"succeeded", "defended"}));
  add_identity(attack);

  std::uint64_t handshakes = 100;
  unsigned workers = 1;
  std::uint64_t attack_samples = 5;
  bool no_attacks = false;
  CLI::App* bench = app.add_subcommand("bench", "compare the three modes");
  bench->add_option("--handshakes", handshakes, "handshakes per mode");
  bench->add_option("--seed", seed, "rng seed")->required();
  bench->add_option("--workers", workers, "worker threads");
  bench->add_option("--attack-samples", attack_samples,
                    "seeded runs behind each attack success rate");
  bench->add_flag("--no-attacks", no_attacks, "skip the attack summary");
  add_identity(bench);

  CLI::App* vectors = app.add_subcommand("vectors", "print the pinned digest vectors");
  vectors->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (vectors->parsed()) return run_vectors(format);

    CLI::App* active = handshake->parsed() ? handshake : attack->parsed() ? attack : bench;
    const bool from_file = !config_path.empty();
    ScenarioConfig config;
    if (from_file) config = ScenarioConfig::from_file(config_path);
    auto overridden = [&](const std::string& name) {
      return !from_file || active->count(name) > 0;
    };
    if (overridden("--seed")) config.seed = seed;
    if (overridden("--mode")) config.mode = *mode_from_token(mode_token);
    if (overridden("--username")) config.username = username;
    if (overridden("--password")) config.password = password;
    if (overridden("--realm")) config.realm = realm;
    if (overridden("--server-ip")) config.server_ip = server_ip;

    if (handshake->parsed()) {
      if (wrong_password) {
        config.scenario = "wrong-password";
      } else if (!from_file) {
        config.scenario = "honest-" + std::string(to_token(config.mode));
      }
      CredentialStore store = creds_path.empty()
                                  ? CredentialStore()
                                  : CredentialStore::from_file(creds_path);
      if (creds_path.empty()) store.add(config.username, config.realm, config.password);
      HashCounter client_counter;
      HashCounter server_counter;
      ServerEndpoint server(ServerConfig{config.realm, config.server_ip},
                            std::move(store), config.mode,
                            Rng::derive(config.seed, 2), &server_counter);
      HandshakeResult result = run_handshake(
          config, server, nullptr, client_counter, server_counter,
          wrong_password ? config.password + "-wrong" : config.password);
      if (format == "json") std::cout << handshake_json(result).dump(2) << "\n";
      else print_handshake_text(result);
      return result.accepted ? 0 : 1;
    }

    if (attack->parsed()) {
      if (!attack->count("--seed") && !from_file) {
        std::cerr << "error: attack needs --seed or --config\n";
        return 2;
      }
      if (!attack_kind.empty()) {
        config.scenario = attack_kind;
      } else if (!from_file ||
                 (config.scenario != "replay" && config.scenario != "forge-ok" &&
                  config.scenario != "tamper-auth" &&
                  config.scenario != "dictionary")) {
        std::cerr << "error: attack needs a kind argument or a config whose "
                     "scenario names an attack\n";
        return 2;
      }
      if (!mutation.empty()) config.mutation = mutation;
      if (!wordlist_path.empty()) config.wordlist_path = wordlist_path;
      ScenarioResult result = run_scenario(config);
      const AttackOutcome& outcome = *result.attack;
      if (format == "json") {
        nlohmann::json j{{"handshake", handshake_json(result.handshake)},
                         {"attack", outcome.to_json()}};
        std::cout << j.dump(2) << "\n";
      } else {
        print_handshake_text(result.handshake);
        std::cout << "attack: " << to_token(outcome.kind) << "\n"
                  << "attacker succeeded: " << (outcome.succeeded ? "yes" : "no")
                  << "\n"
                  << "defender reason: " << to_token(outcome.defender_reason) << "\n"
                  << "detail: " << outcome.detail << "\n";
        if (outcome.digest_trials > 0) {
          std::cout << "digest trials: " << outcome.digest_trials << "\n";
        }
        if (outcome.recovered_secret) {
          std::cout << "recovered secret: " << *outcome.recovered_secret << "\n";
        }
      }
      if (expect.empty()) return 0;
      bool met = expect == "succeeded" ? outcome.succeeded : !outcome.succeeded;
      return met ? 0 : 1;
    }

    if (bench->parsed()) {
      BenchOptions options;
      options.handshakes = handshakes;
      options.seed = seed;
      options.workers = workers;
      options.username = username;
      options.password = password;
      options.realm = realm;
      options.server_ip = server_ip;
      options.with_attacks = !no_attacks;
      options.attack_samples = attack_samples;
      ComparisonReport report = run_bench(options);
      if (format == "json") std::cout << report.to_json().dump(2) << "\n";
      else std::cout << report.render_table();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
