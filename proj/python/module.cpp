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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "sipmauth/attacks.hpp"
#include "sipmauth/auth_params.hpp"
#include "sipmauth/bench.hpp"
#include "sipmauth/scenario.hpp"

namespace py = pybind11;

namespace {

using namespace sipmauth;

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Mode parse_mode(const std::string& token) {
  std::optional<Mode> mode = mode_from_token(token);
  if (!mode) throw py::value_error("unknown mode: " + token);
  return *mode;
}

nlohmann::json verdict_json(const Verdict& v) {
  return nlohmann::json{{"accepted", v.accepted},
                        {"reason", std::string(to_token(v.reason))},
                        {"detail", v.detail}};
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

ScenarioConfig build_config(const std::string& scenario, std::uint64_t seed,
                            const std::string& mode, const std::string& username,
                            const std::string& password, const std::string& realm,
                            const std::string& server_ip,
                            const std::optional<std::string>& wordlist_path,
                            const std::optional<std::string>& mutation) {
  ScenarioConfig config;
  config.scenario = scenario;
  config.seed = seed;
  config.mode = parse_mode(mode);
  config.username = username;
  config.password = password;
  config.realm = realm;
  config.server_ip = server_ip;
  config.wordlist_path = wordlist_path;
  config.mutation = mutation;
  return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SIP digest authentication simulator with mutual verification";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DigestError>(m, "DigestError", PyExc_ValueError);
  py::register_exception<SessionError>(m, "SessionError", PyExc_RuntimeError);
  py::register_exception<SimError>(m, "SimError", PyExc_ValueError);

  m.def(
      "md5_hex", [](const std::string& data) { return md5_hex(data).str(); },
      py::arg("data"), "MD5 of raw bytes as 32 lowercase hex digits");
  m.def(
      "h_a1",
      [](const std::string& username, const std::string& realm,
         const std::string& password) { return h_a1(username, realm, password).str(); },
      py::arg("username"), py::arg("realm"), py::arg("password"));
  m.def(
      "h_a2",
      [](const std::string& method, const std::string& digest_uri) {
        return h_a2(method, digest_uri).str();
      },
      py::arg("method"), py::arg("digest_uri"));
  m.def(
      "response_legacy",
      [](const std::string& ha1, const std::string& nonce, const std::string& ha2) {
        return response_legacy(HexDigest(ha1), nonce, HexDigest(ha2)).str();
      },
      py::arg("ha1"), py::arg("nonce"), py::arg("ha2"));
  m.def(
      "response_qop",
      [](const std::string& username, const std::string& realm,
         const std::string& password, const std::string& method,
         const std::string& digest_uri, const std::string& nonce,
         const std::optional<std::string>& nc, const std::optional<std::string>& cnonce,
         const std::optional<std::string>& qop) {
        DigestInputs inputs;
        inputs.username = username;
        inputs.realm = realm;
        inputs.password = password;
        inputs.method = method;
        inputs.digest_uri = digest_uri;
        inputs.nonce = nonce;
        inputs.nc = nc;
        inputs.cnonce = cnonce;
        inputs.qop = qop;
        return response_qop(inputs).str();
      },
      py::arg("username"), py::arg("realm"), py::arg("password"), py::arg("method"),
      py::arg("digest_uri"), py::arg("nonce"), py::arg("nc") = std::nullopt,
      py::arg("cnonce") = std::nullopt, py::arg("qop") = std::nullopt);
  m.def("format_nc", &format_nc, py::arg("counter"));
  m.def(
      "digest_equal",
      [](const std::string& a, const std::string& b) {
        return digest_equal(HexDigest(a), HexDigest(b));
      },
      py::arg("a"), py::arg("b"));
  m.def("derive_seed", &Rng::derive, py::arg("seed"), py::arg("index"));

  py::enum_<Method>(m, "Method")
      .value("INVITE", Method::Invite)
      .value("ACK", Method::Ack)
      .value("BYE", Method::Bye)
      .value("CANCEL", Method::Cancel)
      .value("OPTIONS", Method::Options)
      .value("REGISTER", Method::Register);

  py::enum_<SipMessage::Kind>(m, "MessageKind")
      .value("REQUEST", SipMessage::Kind::Request)
      .value("RESPONSE", SipMessage::Kind::Response);

  py::class_<Header>(m, "Header")
      .def(py::init<>())
      .def(py::init([](std::string name, std::string value) {
             return Header{std::move(name), std::move(value)};
           }),
           py::arg("name"), py::arg("value"))
      .def_readwrite("name", &Header::name)
      .def_readwrite("value", &Header::value)
      .def("__repr__", [](const Header& h) {
        return "Header(" + h.name + ": " + h.value + ")";
      });

  py::class_<SipMessage>(m, "SipMessage")
      .def(py::init<>())
      .def_readwrite("kind", &SipMessage::kind)
      .def_readwrite("method", &SipMessage::method)
      .def_readwrite("request_uri", &SipMessage::request_uri)
      .def_readwrite("status", &SipMessage::status)
      .def_readwrite("reason", &SipMessage::reason)
      .def_readwrite("headers", &SipMessage::headers)
      .def_readwrite("body", &SipMessage::body)
      .def_static("request", &SipMessage::request, py::arg("method"), py::arg("uri"))
      .def_static("response", &SipMessage::response, py::arg("status"),
                  py::arg("reason"))
      .def("is_request", &SipMessage::is_request)
      .def(
          "find_header",
          [](const SipMessage& msg, const std::string& name)
              -> std::optional<std::string> {
            const std::string* value = msg.find_header(name);
            if (!value) return std::nullopt;
            return *value;
          },
          py::arg("name"))
      .def("add_header", &SipMessage::add_header, py::arg("name"), py::arg("value"))
      .def("set_header", &SipMessage::set_header, py::arg("name"), py::arg("value"))
      .def("__eq__", [](const SipMessage& a, const SipMessage& b) { return a == b; });

  m.def(
      "parse_message", [](const std::string& bytes) { return parse_message(bytes); },
      py::arg("data"));
  m.def("serialize_message", &serialize_message, py::arg("message"));

  py::enum_<AuthHeader>(m, "AuthHeader")
      .value("WWW_AUTHENTICATE", AuthHeader::WwwAuthenticate)
      .value("AUTHORIZATION", AuthHeader::Authorization)
      .value("AUTHENTICATION_INFO", AuthHeader::AuthenticationInfo);

  py::class_<AuthParams>(m, "AuthParams")
      .def(py::init<>())
      .def_readwrite("username", &AuthParams::username)
      .def_readwrite("realm", &AuthParams::realm)
      .def_readwrite("nonce", &AuthParams::nonce)
      .def_readwrite("qop", &AuthParams::qop)
      .def_readwrite("nc", &AuthParams::nc)
      .def_readwrite("cnonce", &AuthParams::cnonce)
      .def_readwrite("serverip", &AuthParams::serverip)
      .def_readwrite("uri", &AuthParams::uri)
      .def_readwrite("response", &AuthParams::response)
      .def_readwrite("algorithm", &AuthParams::algorithm)
      .def_readwrite("extra", &AuthParams::extra)
      .def("__eq__",
           [](const AuthParams& a, const AuthParams& b) { return a == b; });

  m.def(
      "parse_auth_params",
      [](const std::string& header_value) { return parse_auth_params(header_value); },
      py::arg("header_value"));
  m.def("serialize_auth_params", &serialize_auth_params, py::arg("params"),
        py::arg("header"));

  m.def("scenario_names", &scenario_names);
  m.def("default_wordlist", [] { return default_wordlist(); });

  m.def(
      "run_handshake",
      [](std::uint64_t seed, const std::string& mode, const std::string& username,
         const std::string& password, const std::string& realm,
         const std::string& server_ip, bool wrong_password) {
        ScenarioConfig config =
            build_config(wrong_password ? "wrong-password" : "honest-" + mode, seed,
                         mode, username, password, realm, server_ip, std::nullopt,
                         std::nullopt);
        CredentialStore store;
        store.add(config.username, config.realm, config.password);
        HashCounter client_counter;
        HashCounter server_counter;
        ServerEndpoint server(ServerConfig{config.realm, config.server_ip},
                              std::move(store), config.mode,
                              Rng::derive(config.seed, 2), &server_counter);
        HandshakeResult result = run_handshake(
            config, server, nullptr, client_counter, server_counter,
            wrong_password ? config.password + "-wrong" : config.password);
        return json_to_py(handshake_json(result));
      },
      py::arg("seed"), py::arg("mode") = "mutual", py::arg("username") = "alice",
      py::arg("password") = "circle-of-life", py::arg("realm") = "sip.example.com",
      py::arg("server_ip") = "198.51.100.7", py::arg("wrong_password") = false,
      "One full handshake; returns verdicts, counters, and the transcript");

  m.def(
      "run_scenario",
      [](const std::string& scenario, std::uint64_t seed, const std::string& mode,
         const std::string& username, const std::string& password,
         const std::string& realm, const std::string& server_ip,
         const std::optional<std::string>& wordlist_path,
         const std::optional<std::string>& mutation) {
        ScenarioResult result =
            run_scenario(build_config(scenario, seed, mode, username, password, realm,
                                      server_ip, wordlist_path, mutation));
        nlohmann::json j{{"handshake", handshake_json(result.handshake)}};
        j["attack"] = result.attack ? result.attack->to_json() : nlohmann::json();
        return json_to_py(j);
      },
      py::arg("scenario"), py::arg("seed"), py::arg("mode") = "mutual",
      py::arg("username") = "alice", py::arg("password") = "circle-of-life",
      py::arg("realm") = "sip.example.com", py::arg("server_ip") = "198.51.100.7",
      py::arg("wordlist_path") = std::nullopt, py::arg("mutation") = std::nullopt,
      "Named scenario (honest, wrong-password, or one of the attacks)");

  m.def(
      "run_bench",
      [](std::uint64_t handshakes, std::uint64_t seed, unsigned workers,
         const std::string& username, const std::string& password,
         const std::string& realm, const std::string& server_ip, bool with_attacks,
         std::uint64_t attack_samples) {
        BenchOptions options;
        options.handshakes = handshakes;
        options.seed = seed;
        options.workers = workers;
        options.username = username;
        options.password = password;
        options.realm = realm;
        options.server_ip = server_ip;
        options.with_attacks = with_attacks;
        options.attack_samples = attack_samples;
        return json_to_py(run_bench(options).to_json());
      },
      py::arg("handshakes") = 100, py::arg("seed") = 1, py::arg("workers") = 1,
      py::arg("username") = "alice", py::arg("password") = "circle-of-life",
      py::arg("realm") = "sip.example.com", py::arg("server_ip") = "198.51.100.7",
      py::arg("with_attacks") = true, py::arg("attack_samples") = 5,
      "Per-mode counters and attack success rates as a dict");
}
