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

#ifndef SIPMAUTH_CREDENTIALS_HPP
#define SIPMAUTH_CREDENTIALS_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace sipmauth {

struct Credential {
  std::string realm;
  std::string password;

  friend bool operator==(const Credential&, const Credential&) = default;
};

/// Server-side user database keyed by username.
class CredentialStore {
public:
  CredentialStore() = default;

  /// Inserts or replaces the entry for `username`.
  void add(const std::string& username, const std::string& realm,
           const std::string& password);

  std::optional<Credential> find(std::string_view username) const;

  std::size_t size() const { return entries_.size(); }

  /// Parses "username:realm:password" lines. The password may itself contain
  /// colons; only the first two split. Blank lines and lines starting with
  /// '#' are skipped. Throws std::runtime_error on a line with fewer than
  /// two colons or on an unreadable file.
  static CredentialStore from_file(const std::string& path);
  static CredentialStore from_text(std::string_view text);

private:
  std::map<std::string, Credential, std::less<>> entries_;
};

}  // namespace sipmauth

#endif  // SIPMAUTH_CREDENTIALS_HPP
