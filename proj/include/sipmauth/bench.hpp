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

#ifndef SIPMAUTH_BENCH_HPP
#define SIPMAUTH_BENCH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sipmauth/session.hpp"

namespace sipmauth {

/// Per-mode measurements. Counter fields are pure functions of the options;
/// only elapsed_ns and handshakes_per_second vary between runs.
struct MetricsReport {
  Mode mode = Mode::Legacy;
  std::uint64_t handshakes_run = 0;
  std::size_t legs_per_handshake = 0;
  std::uint64_t bytes_per_handshake = 0;
  std::uint64_t hash_calls_client = 0;  // total over all handshakes
  std::uint64_t hash_calls_server = 0;
  std::uint64_t elapsed_ns = 0;
  double handshakes_per_second = 0.0;
};

struct ComparisonReport {
  std::vector<MetricsReport> rows;  // legacy, mutual, selective
  std::map<std::string, double> attack_summary;  // "mode/attack" -> success rate
  std::vector<std::string> notes;

  /// Counter fields under "deterministic", wall-clock under "timing". The
  /// deterministic subtree is byte-stable for fixed options regardless of
  /// worker count.
  nlohmann::json to_json() const;
  std::string render_table() const;
};

struct BenchOptions {
  std::uint64_t handshakes = 100;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string username = "alice";
  std::string password = "circle-of-life";
  std::string realm = "sip.example.com";
  std::string server_ip = "198.51.100.7";
  bool with_attacks = true;
  std::uint64_t attack_samples = 5;  // seeded attack runs behind each rate
};

/// Runs `handshakes` handshakes per mode, sharded over `workers` threads.
/// Handshake i always uses the same derived seed no matter which worker it
/// lands on. Throws SimError{BadConfig} for zero handshakes or workers.
ComparisonReport run_bench(const BenchOptions& options);

}  // namespace sipmauth

#endif  // SIPMAUTH_BENCH_HPP
