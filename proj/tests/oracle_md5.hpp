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

#ifndef SIPMAUTH_TESTS_ORACLE_MD5_HPP
#define SIPMAUTH_TESTS_ORACLE_MD5_HPP

#include <string>
#include <string_view>

namespace oracle {

/// Test-only MD5 written straight from the RFC 1321 algorithm description.
/// Deliberately independent of the library's OpenSSL-backed path so the two
/// can witness each other.
std::string md5_hex(std::string_view data);

}  // namespace oracle

#endif  // SIPMAUTH_TESTS_ORACLE_MD5_HPP
