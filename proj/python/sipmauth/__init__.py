# Copyright (c) 2026 The sipmauth Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""SIP digest authentication simulator with mutual verification."""

from ._core import (
    AuthHeader,
    AuthParams,
    DigestError,
    Header,
    MessageKind,
    Method,
    ParseError,
    SessionError,
    SimError,
    SipMessage,
    default_wordlist,
    derive_seed,
    digest_equal,
    format_nc,
    h_a1,
    h_a2,
    md5_hex,
    parse_auth_params,
    parse_message,
    response_legacy,
    response_qop,
    run_bench,
    run_handshake,
    run_scenario,
    scenario_names,
    serialize_auth_params,
    serialize_message,
)

__version__ = "0.1.0"

__all__ = [
    "AuthHeader",
    "AuthParams",
    "DigestError",
    "Header",
    "MessageKind",
    "Method",
    "ParseError",
    "SessionError",
    "SimError",
    "SipMessage",
    "default_wordlist",
    "derive_seed",
    "digest_equal",
    "format_nc",
    "h_a1",
    "h_a2",
    "md5_hex",
    "parse_auth_params",
    "parse_message",
    "response_legacy",
    "response_qop",
    "run_bench",
    "run_handshake",
    "run_scenario",
    "scenario_names",
    "serialize_auth_params",
    "serialize_message",
]
