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

#include <doctest.h>

#include <string>

#include "sipmauth/auth_params.hpp"
#include "sipmauth/message.hpp"

using namespace sipmauth;

namespace {

const std::string kCanonicalInvite =
    "INVITE sip:bob@biloxi.com SIP/2.0\r\n"
    "Via: SIP/2.0/UDP client.atlanta.com;branch=z9hG4bK74bf9\r\n"
    "Max-Forwards: 70\r\n"
    "From: Alice <sip:alice@atlanta.com>;tag=9fxced76sl\r\n"
    "To: Bob <sip:bob@biloxi.com>\r\n"
    "Call-ID: 3848276298220188511@atlanta.com\r\n"
    "CSeq: 1 INVITE\r\n"
    "Contact: <sip:alice@client.atlanta.com>\r\n"
    "Content-Length: 0\r\n"
    "\r\n";

ParseErrc parse_errc_of(std::string_view bytes, std::size_t* index = nullptr) {
  try {
    parse_message(bytes);
  } catch (const ParseError& err) {
    if (index) *index = err.index();
    return err.code();
  }
  FAIL("expected a ParseError");
  return ParseErrc::MalformedStartLine;
}

ParseErrc auth_errc_of(std::string_view value, std::size_t* index = nullptr) {
  try {
    parse_auth_params(value);
  } catch (const ParseError& err) {
    if (index) *index = err.index();
    return err.code();
  }
  FAIL("expected a ParseError");
  return ParseErrc::NotDigestScheme;
}

}  // namespace

TEST_CASE("canonical INVITE parses field by field") {
  const SipMessage msg = parse_message(kCanonicalInvite);
  CHECK(msg.kind == SipMessage::Kind::Request);
  CHECK(msg.method == Method::Invite);
  CHECK(msg.request_uri == "sip:bob@biloxi.com");
  CHECK(msg.headers.size() == 8);
  REQUIRE(msg.find_header("Call-ID") != nullptr);
  CHECK(*msg.find_header("Call-ID") == "3848276298220188511@atlanta.com");
  REQUIRE(msg.find_header("cseq") != nullptr);
  CHECK(*msg.find_header("cseq") == "1 INVITE");
  CHECK(msg.body.empty());
}

TEST_CASE("parse then serialize reproduces the canonical bytes") {
  CHECK(serialize_message(parse_message(kCanonicalInvite)) == kCanonicalInvite);
}

TEST_CASE("constructed messages survive a serialize/parse round trip") {
  SipMessage req = SipMessage::request(Method::Register, "sip:registrar.biloxi.com");
  req.add_header("Via", "SIP/2.0/UDP bobspc.biloxi.com:5060;branch=z9hG4bKnashds7");
  req.add_header("To", "Bob <sip:bob@biloxi.com>");
  req.add_header("Content-Length", "5");
  req.body = "hello";
  CHECK(parse_message(serialize_message(req)) == req);

  SipMessage resp = SipMessage::response(401, "Unauthorized");
  resp.add_header("WWW-Authenticate", "Digest realm=\"sip.example.com\", nonce=\"abc\"");
  resp.add_header("Content-Length", "0");
  CHECK(parse_message(serialize_message(resp)) == resp);
}

TEST_CASE("responses keep their reason phrase, including an empty one") {
  const SipMessage ok = parse_message("SIP/2.0 200 OK\r\n\r\n");
  CHECK(ok.kind == SipMessage::Kind::Response);
  CHECK(ok.status == 200);
  CHECK(ok.reason == "OK");

  const SipMessage spaced = parse_message("SIP/2.0 486 Busy Here\r\n\r\n");
  CHECK(spaced.reason == "Busy Here");

  const SipMessage blank = parse_message("SIP/2.0 180 \r\n\r\n");
  CHECK(blank.reason.empty());
  CHECK(serialize_message(blank) == "SIP/2.0 180 \r\n\r\n");
}

TEST_CASE("status codes outside 100..699 are rejected") {
  CHECK(parse_errc_of("SIP/2.0 099 Low\r\n\r\n") == ParseErrc::MalformedStartLine);
  CHECK(parse_errc_of("SIP/2.0 700 High\r\n\r\n") == ParseErrc::MalformedStartLine);
  CHECK(parse_message("SIP/2.0 100 Trying\r\n\r\n").status == 100);
  CHECK(parse_message("SIP/2.0 699 Edge\r\n\r\n").status == 699);
  // A fourth digit is not silently folded into the reason phrase.
  CHECK(parse_errc_of("SIP/2.0 2000 OK\r\n\r\n") == ParseErrc::MalformedStartLine);
  CHECK(parse_errc_of("SIP/2.0 2x0 OK\r\n\r\n") == ParseErrc::MalformedStartLine);
  CHECK(parse_errc_of("SIP/2.0\r\n\r\n") == ParseErrc::MalformedStartLine);
}

TEST_CASE("request start line validation") {
  std::size_t index = 99;
  CHECK(parse_errc_of("SPEAK sip:x SIP/2.0\r\n\r\n", &index) == ParseErrc::UnknownMethod);
  CHECK(index == 0);
  // Method tokens are case-sensitive on the wire.
  CHECK(parse_errc_of("invite sip:x SIP/2.0\r\n\r\n") == ParseErrc::UnknownMethod);
  CHECK(parse_errc_of("INVITE SIP/2.0\r\n\r\n") == ParseErrc::MalformedStartLine);
  CHECK(parse_errc_of("INVITE sip:x HTTP/1.1\r\n\r\n") == ParseErrc::MalformedStartLine);
  CHECK(parse_errc_of("INVITE sip:a b SIP/2.0\r\n\r\n") == ParseErrc::MalformedStartLine);
  CHECK(parse_errc_of("\r\n\r\n") == ParseErrc::MalformedStartLine);
}

TEST_CASE("framing errors carry the offending line index") {
  std::size_t index = 99;
  CHECK(parse_errc_of("", &index) == ParseErrc::MissingBlankLine);
  CHECK(index == 0);

  CHECK(parse_errc_of("INVITE sip:x SIP/2.0\r\nVia: v\r\n", &index) ==
        ParseErrc::MissingBlankLine);
  CHECK(index == 2);

  CHECK(parse_errc_of("INVITE sip:x SIP/2.0\r\nVia: v\r\nbroken line\r\n\r\n", &index) ==
        ParseErrc::MalformedHeader);
  CHECK(index == 2);

  CHECK(parse_errc_of("INVITE sip:x SIP/2.0\r\n: nameless\r\n\r\n") ==
        ParseErrc::MalformedHeader);
}

TEST_CASE("every Content-Length occurrence must match the body") {
  std::size_t index = 99;
  CHECK(parse_errc_of("INVITE sip:x SIP/2.0\r\nContent-Length: 4\r\n\r\nabc", &index) ==
        ParseErrc::BadContentLength);
  CHECK(index == 1);

  CHECK(parse_errc_of("INVITE sip:x SIP/2.0\r\nContent-Length: abc\r\n\r\n") ==
        ParseErrc::BadContentLength);
  CHECK(parse_errc_of("INVITE sip:x SIP/2.0\r\nContent-Length: -1\r\n\r\n") ==
        ParseErrc::BadContentLength);

  // Two declarations, the second one wrong: the index points at it.
  CHECK(parse_errc_of(
            "INVITE sip:x SIP/2.0\r\nVia: v\r\nContent-Length: 3\r\nContent-Length: 5\r\n\r\nabc",
            &index) == ParseErrc::BadContentLength);
  CHECK(index == 3);

  const SipMessage msg =
      parse_message("INVITE sip:x SIP/2.0\r\nContent-Length: 3\r\n\r\nabc");
  CHECK(msg.body == "abc");
}

TEST_CASE("bodies are preserved byte for byte") {
  const std::string body = "v=0\r\no=alice 2890844526 IN IP4 atlanta.com\r\n";
  SipMessage msg = SipMessage::request(Method::Invite, "sip:bob@biloxi.com");
  msg.add_header("Content-Length", std::to_string(body.size()));
  msg.body = body;
  const std::string wire = serialize_message(msg);
  const SipMessage back = parse_message(wire);
  CHECK(back.body == body);
  CHECK(serialize_message(back) == wire);
}

TEST_CASE("header values are trimmed, names and order are preserved") {
  const SipMessage msg = parse_message(
      "OPTIONS sip:x SIP/2.0\r\n"
      "Route: \t first \r\n"
      "route: second\r\n"
      "\r\n");
  REQUIRE(msg.headers.size() == 2);
  CHECK(msg.headers[0].name == "Route");
  CHECK(msg.headers[0].value == "first");
  CHECK(msg.headers[1].name == "route");
  CHECK(msg.headers[1].value == "second");
  // find_header is case-insensitive and returns the first match.
  CHECK(*msg.find_header("ROUTE") == "first");
}

TEST_CASE("set_header replaces the first match, add_header appends") {
  SipMessage msg = SipMessage::request(Method::Bye, "sip:x");
  msg.add_header("Via", "one");
  msg.add_header("Via", "two");
  msg.set_header("via", "patched");
  REQUIRE(msg.headers.size() == 2);
  CHECK(msg.headers[0].value == "patched");
  CHECK(msg.headers[1].value == "two");
  msg.set_header("New-Header", "fresh");
  CHECK(msg.headers.size() == 3);
  CHECK(*msg.find_header("new-header") == "fresh");
}

TEST_CASE("auth params: golden challenge parse") {
  const AuthParams params = parse_auth_params(
      "Digest realm=\"sip.example.com\", qop=\"auth,auth-int\", "
      "serverip=\"198.51.100.7\", nonce=\"DCD98B7102DD2F0E8B11D0F600BFB0C093\", "
      "nc=00000001, algorithm=MD5");
  CHECK(params.realm == "sip.example.com");
  CHECK(params.qop == std::vector<std::string>{"auth", "auth-int"});
  CHECK(params.serverip == "198.51.100.7");
  CHECK(params.nonce == "dcd98b7102dd2f0e8b11d0f600bfb0c093");
  CHECK(params.nc == "00000001");
  CHECK(params.algorithm == "MD5");
  CHECK(params.extra.empty());
  CHECK_FALSE(params.username.has_value());
}

TEST_CASE("auth params: scheme handling") {
  CHECK_NOTHROW(parse_auth_params("DIGEST realm=\"r\""));
  CHECK_NOTHROW(parse_auth_params("digest realm=\"r\""));
  CHECK(auth_errc_of("Basic realm=\"r\"") == ParseErrc::NotDigestScheme);
  CHECK(auth_errc_of("") == ParseErrc::NotDigestScheme);
}

TEST_CASE("auth params: ip is an alias of serverip") {
  const AuthParams params = parse_auth_params("Digest realm=\"r\", ip=\"203.0.113.9\"");
  CHECK(params.serverip == "203.0.113.9");

  // The alias shares the duplicate bucket with the canonical name.
  std::size_t index = 99;
  CHECK(auth_errc_of("Digest serverip=\"a\", ip=\"b\"", &index) ==
        ParseErrc::DuplicateParameter);
  CHECK(index == 1);
}

TEST_CASE("auth params: hex fields are lowercased, wrong shapes go to extra") {
  const AuthParams params = parse_auth_params(
      "Digest nonce=\"ABCDef\", cnonce=\"0A4F113B\", nc=0000000F, "
      "response=\"6629FAE49393A05397450978507C4EF1\"");
  CHECK(params.nonce == "abcdef");
  CHECK(params.cnonce == "0a4f113b");
  CHECK(params.nc == "0000000f");
  CHECK(params.response == "6629fae49393a05397450978507c4ef1");

  const AuthParams odd = parse_auth_params(
      "Digest nc=123, response=\"nothex\", flavor=\"vanilla\"");
  CHECK_FALSE(odd.nc.has_value());
  CHECK_FALSE(odd.response.has_value());
  REQUIRE(odd.extra.size() == 3);
  CHECK(odd.extra[0].name == "nc");
  CHECK(odd.extra[0].value == "123");
  CHECK(odd.extra[1].name == "response");
  CHECK(odd.extra[1].value == "nothex");
  CHECK(odd.extra[2].name == "flavor");
  CHECK(odd.extra[2].value == "vanilla");
}

TEST_CASE("auth params: qop offers are split, trimmed, and lowercased") {
  const AuthParams params = parse_auth_params("Digest qop=\"auth, AUTH-INT,,  \"");
  CHECK(params.qop == std::vector<std::string>{"auth", "auth-int"});
  const AuthParams bare = parse_auth_params("Digest qop=auth");
  CHECK(bare.qop == std::vector<std::string>{"auth"});
}

TEST_CASE("auth params: error paths carry the parameter index") {
  std::size_t index = 99;
  CHECK(auth_errc_of("Digest realm=\"r\", realm=\"again\"", &index) ==
        ParseErrc::DuplicateParameter);
  CHECK(index == 1);
  CHECK(auth_errc_of("Digest realm=\"never closed", &index) ==
        ParseErrc::UnterminatedQuote);
  CHECK(index == 0);
  CHECK(auth_errc_of("Digest realm=\"r\", orphan", &index) ==
        ParseErrc::MalformedParameter);
  CHECK(index == 1);
  CHECK(auth_errc_of("Digest =\"x\"") == ParseErrc::MalformedParameter);
}

TEST_CASE("auth params: quoted escapes survive a round trip") {
  AuthParams params;
  params.realm = "quote\"and\\slash";
  params.username = "alice";
  const std::string wire = serialize_auth_params(params, AuthHeader::Authorization);
  const AuthParams back = parse_auth_params(wire);
  CHECK(back.realm == "quote\"and\\slash");
  CHECK(back == params);
}

TEST_CASE("auth params: canonical serialization order and quoting") {
  AuthParams params;
  params.realm = "sip.example.com";
  params.qop = {"auth"};
  params.serverip = "198.51.100.7";
  params.nonce = "00112233445566778899aabbccddeeff";
  params.nc = "00000001";
  params.username = "alice";
  params.uri = "sip:bob@biloxi.com";
  params.cnonce = "0a4f113b";
  params.response = "6629fae49393a05397450978507c4ef1";
  params.algorithm = "MD5";
  params.extra.push_back(Header{"opaque", "xyz"});

  CHECK(serialize_auth_params(params, AuthHeader::Authorization) ==
        "Digest realm=\"sip.example.com\", qop=\"auth\", serverip=\"198.51.100.7\", "
        "nonce=\"00112233445566778899aabbccddeeff\", nc=00000001, username=\"alice\", "
        "uri=\"sip:bob@biloxi.com\", cnonce=\"0a4f113b\", "
        "response=\"6629fae49393a05397450978507c4ef1\", algorithm=MD5, opaque=\"xyz\"");

  CHECK(parse_auth_params(serialize_auth_params(params, AuthHeader::Authorization)) ==
        params);
}

TEST_CASE("auth params: realm requirement depends on the header kind") {
  AuthParams no_realm;
  no_realm.nonce = "00112233445566778899aabbccddeeff";
  CHECK_THROWS_AS(serialize_auth_params(no_realm, AuthHeader::WwwAuthenticate), ParseError);
  CHECK_THROWS_AS(serialize_auth_params(no_realm, AuthHeader::Authorization), ParseError);
  CHECK_NOTHROW(serialize_auth_params(no_realm, AuthHeader::AuthenticationInfo));
  try {
    serialize_auth_params(no_realm, AuthHeader::Authorization);
  } catch (const ParseError& err) {
    CHECK(err.code() == ParseErrc::MissingRealm);
  }
}

TEST_CASE("auth header names round-trip through to_header_name") {
  CHECK(to_header_name(AuthHeader::WwwAuthenticate) == "WWW-Authenticate");
  CHECK(to_header_name(AuthHeader::Authorization) == "Authorization");
  CHECK(to_header_name(AuthHeader::AuthenticationInfo) == "Authentication-Info");
}
