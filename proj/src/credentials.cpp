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

#include "sipmauth/credentials.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sipmauth {

void CredentialStore::add(const std::string& username, const std::string& realm,
                          const std::string& password) {
  entries_[username] = Credential{realm, password};
}

std::optional<Credential> CredentialStore::find(std::string_view username) const {
  auto it = entries_.find(username);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

CredentialStore CredentialStore::from_text(std::string_view text) {
  CredentialStore store;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::size_t c1 = line.find(':');
    std::size_t c2 = (c1 == std::string_view::npos) ? std::string_view::npos
                                                    : line.find(':', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw std::runtime_error("credential line " + std::to_string(line_no) +
                               ": expected username:realm:password");
    }
    store.add(std::string(line.substr(0, c1)),
              std::string(line.substr(c1 + 1, c2 - c1 - 1)),
              std::string(line.substr(c2 + 1)));
  }
  return store;
}

CredentialStore CredentialStore::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open credential file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

}  // namespace sipmauth
