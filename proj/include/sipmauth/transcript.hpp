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

#ifndef SIPMAUTH_TRANSCRIPT_HPP
#define SIPMAUTH_TRANSCRIPT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sipmauth/session.hpp"

namespace sipmauth {

enum class Direction { ClientToServer, ServerToClient, AdversaryInjected };

std::string_view to_token(Direction d) noexcept;

/// What happened to a message on the wire.
struct Annotation {
  enum class Kind { Delivered, Dropped, Tampered, Replayed };

  Kind kind = Kind::Delivered;
  std::string note;
  std::optional<std::size_t> original_index;  // Replayed only

  static Annotation delivered() { return {}; }
  static Annotation dropped(std::string note = {}) {
    return Annotation{Kind::Dropped, std::move(note), std::nullopt};
  }
  static Annotation tampered(std::string note) {
    return Annotation{Kind::Tampered, std::move(note), std::nullopt};
  }
  static Annotation replayed(std::size_t original_index) {
    return Annotation{Kind::Replayed, {}, original_index};
  }

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

std::string_view to_token(Annotation::Kind k) noexcept;

struct TranscriptEvent {
  std::size_t index = 0;
  Direction direction = Direction::ClientToServer;
  std::string wire_bytes;
  Annotation annotation;

  friend bool operator==(const TranscriptEvent&, const TranscriptEvent&) = default;
};

/// Everything a scenario run needs to be reproduced or attacked offline.
/// The password rides along in memory so attack replays can rebuild the
/// honest endpoints, but it never appears in the JSON export.
struct ScenarioConfig {
  std::string scenario = "honest-mutual";
  std::uint64_t seed = 0;
  Mode mode = Mode::Mutual;
  std::string username = "alice";
  std::string password = "circle-of-life";
  std::string realm = "sip.example.com";
  std::string server_ip = "198.51.100.7";
  std::optional<std::string> wordlist_path;
  std::optional<std::string> mutation;

  nlohmann::json to_json() const;  // password omitted

  /// Reads {scenario, seed, mode, username, password, wordlist_path?,
  /// mutation?} plus optional realm/server_ip; absent fields keep their
  /// defaults. Throws SimError{BadConfig} on shape errors.
  static ScenarioConfig from_json(const nlohmann::json& j);
  static ScenarioConfig from_file(const std::string& path);
};

struct Transcript {
  std::string scenario_name;
  std::uint64_t seed = 0;
  Mode mode = Mode::Mutual;
  ScenarioConfig config;
  std::vector<TranscriptEvent> events;
  std::vector<std::string> notes;

  void record(Direction direction, std::string wire_bytes,
              Annotation annotation = Annotation::delivered());

  /// Wire bytes are base64-coded so the document stays valid regardless of
  /// what a tampering adversary put on the wire.
  nlohmann::json to_json() const;

  /// Human-oriented rendering: one line per event with the start line of the
  /// carried message, plus the notes.
  std::string render_text() const;
};

std::string base64_encode(std::string_view bytes);

}  // namespace sipmauth

#endif  // SIPMAUTH_TRANSCRIPT_HPP
