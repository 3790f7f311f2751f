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

#include "sipmauth/transcript.hpp"

#include <fstream>
#include <sstream>

namespace sipmauth {

std::string_view to_token(Direction d) noexcept {
  switch (d) {
    case Direction::ClientToServer: return "client_to_server";
    case Direction::ServerToClient: return "server_to_client";
    case Direction::AdversaryInjected: return "adversary_injected";
  }
  return "client_to_server";
}

std::string_view to_token(Annotation::Kind k) noexcept {
  switch (k) {
    case Annotation::Kind::Delivered: return "delivered";
    case Annotation::Kind::Dropped: return "dropped";
    case Annotation::Kind::Tampered: return "tampered";
    case Annotation::Kind::Replayed: return "replayed";
  }
  return "delivered";
}

std::string base64_encode(std::string_view bytes) {
  static const char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  while (i + 3 <= bytes.size()) {
    unsigned v = (static_cast<unsigned char>(bytes[i]) << 16) |
                 (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                 static_cast<unsigned char>(bytes[i + 2]);
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(kAlphabet[(v >> 6) & 63]);
    out.push_back(kAlphabet[v & 63]);
    i += 3;
  }
  std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    unsigned v = static_cast<unsigned char>(bytes[i]) << 16;
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.append("==");
  } else if (rest == 2) {
    unsigned v = (static_cast<unsigned char>(bytes[i]) << 16) |
                 (static_cast<unsigned char>(bytes[i + 1]) << 8);
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(kAlphabet[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

nlohmann::json ScenarioConfig::to_json() const {
  nlohmann::json j{
      {"scenario", scenario},
      {"seed", seed},
      {"mode", std::string(to_token(mode))},
      {"username", username},
      {"realm", realm},
      {"server_ip", server_ip},
  };
  if (wordlist_path) j["wordlist_path"] = *wordlist_path;
  if (mutation) j["mutation"] = *mutation;
  return j;
}

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json& j) {
  ScenarioConfig config;
  try {
    if (!j.is_object()) {
      throw SimError(SimErrc::BadConfig, "scenario config must be a JSON object");
    }
    if (j.contains("scenario")) config.scenario = j.at("scenario").get<std::string>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("mode")) {
      auto mode = mode_from_token(j.at("mode").get<std::string>());
      if (!mode) {
        throw SimError(SimErrc::BadConfig,
                       "mode must be legacy, mutual, or selective");
      }
      config.mode = *mode;
    }
    if (j.contains("username")) config.username = j.at("username").get<std::string>();
    if (j.contains("password")) config.password = j.at("password").get<std::string>();
    if (j.contains("realm")) config.realm = j.at("realm").get<std::string>();
    if (j.contains("server_ip")) config.server_ip = j.at("server_ip").get<std::string>();
    if (j.contains("wordlist_path")) {
      config.wordlist_path = j.at("wordlist_path").get<std::string>();
    }
    if (j.contains("mutation")) config.mutation = j.at("mutation").get<std::string>();
  } catch (const nlohmann::json::exception& err) {
    throw SimError(SimErrc::BadConfig,
                   std::string("scenario config field has the wrong type: ") +
                       err.what());
  }
  return config;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SimError(SimErrc::BadConfig, "cannot open config file: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw SimError(SimErrc::BadConfig, "config file is not valid JSON: " + path);
  }
  return from_json(j);
}

void Transcript::record(Direction direction, std::string wire_bytes,
                        Annotation annotation) {
  TranscriptEvent event;
  event.index = events.size();
  event.direction = direction;
  event.wire_bytes = std::move(wire_bytes);
  event.annotation = std::move(annotation);
  events.push_back(std::move(event));
}

nlohmann::json Transcript::to_json() const {
  nlohmann::json j{
      {"scenario", scenario_name},
      {"seed", seed},
      {"mode", std::string(to_token(mode))},
      {"config", config.to_json()},
      {"notes", notes},
  };
  nlohmann::json events_json = nlohmann::json::array();
  for (const TranscriptEvent& event : events) {
    nlohmann::json e{
        {"index", event.index},
        {"direction", std::string(to_token(event.direction))},
        {"wire_base64", base64_encode(event.wire_bytes)},
        {"annotation", std::string(to_token(event.annotation.kind))},
    };
    if (!event.annotation.note.empty()) e["note"] = event.annotation.note;
    if (event.annotation.original_index) {
      e["original_index"] = *event.annotation.original_index;
    }
    events_json.push_back(std::move(e));
  }
  j["events"] = std::move(events_json);
  return j;
}

std::string Transcript::render_text() const {
  std::ostringstream out;
  out << "scenario " << scenario_name << " seed " << seed << " mode "
      << to_token(mode) << "\n";
  for (const TranscriptEvent& event : events) {
    std::string first_line = event.wire_bytes.substr(
        0, event.wire_bytes.find("\r\n"));
    out << "  [" << event.index << "] " << to_token(event.direction) << " "
        << to_token(event.annotation.kind);
    if (event.annotation.original_index) {
      out << " of [" << *event.annotation.original_index << "]";
    }
    out << ": " << first_line;
    if (!event.annotation.note.empty()) out << " (" << event.annotation.note << ")";
    out << "\n";
  }
  for (const std::string& note : notes) out << "  note: " << note << "\n";
  return out.str();
}

}  // namespace sipmauth
