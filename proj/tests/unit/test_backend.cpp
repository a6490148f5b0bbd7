/*
 * Copyright 2026 The AltGen Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <future>

#include "altgen/caption_backend.hpp"
#include "altgen/metrics.hpp"
#include "altgen/text.hpp"
#include "properties.hpp"
#include "wire_checks.hpp"

using namespace altgen;
using namespace altgen::backend;
using namespace testsupport;

namespace {

CaptionRequest stub_request(std::string path) {
  CaptionRequest r;
  r.source_path = std::move(path);
  r.media_type = *media_type_for_path(r.source_path);
  r.image_bytes = "bytes";
  return r;
}

}  // namespace

TEST_SUITE("backend") {
  TEST_CASE("stub alt text") {
    StubBackend stub;
    CHECK(stub.generate_alt(stub_request("OEBPS/fox.png")).alt_text == "Image: fox.");
    CaptionRequest r = stub_request("OEBPS/fox.png");
    r.context.figcaption = "Map of Amsterdam canals";
    const AltCandidate c = stub.generate_alt(r);
    CHECK(c.alt_text == "Image: fox. Context: Map of Amsterdam canals.");
    CHECK(c.confidence == StubBackend::kConfidence);
    CHECK(c.backend_id == "stub");
    CHECK(stub.generate_alt(r) == c);
  }

  TEST_CASE("stub context fallbacks") {
    StubBackend stub;
    CaptionRequest r = stub_request("img/boat.jpg");
    r.context.preceding_text = "one two three four five six seven eight nine ten.";
    CHECK(stub.generate_alt(r).alt_text == "Image: boat. Context: three four five six seven eight nine ten.");
    r.context.preceding_text.clear();
    r.context.following_text = "Alpha beta, gamma.";
    CHECK(stub.generate_alt(r).alt_text == "Image: boat. Context: Alpha beta, gamma.");
    r.context.following_text.clear();
    r.context.nearest_heading = "Chapter One";
    CHECK(stub.generate_alt(r).alt_text == "Image: boat. Context: Chapter One.");
  }

  TEST_CASE("stub svg title") {
    StubBackend stub;
    CaptionRequest r = stub_request("OEBPS/map.svg");
    r.image_bytes = "<svg xmlns=\"http://www.w3.org/2000/svg\"><title>Old town</title></svg>";
    CHECK(stub.generate_alt(r).alt_text == "Image: map. Title: Old town.");
  }

  TEST_CASE("stub honours max_length") {
    StubBackend stub;
    CaptionRequest r = stub_request("OEBPS/a-very-long-image-file-name-for-testing.png");
    r.context.figcaption = "words words words words words words words words";
    r.max_length = 30;
    const std::string alt = stub.generate_alt(r).alt_text;
    CHECK(text::codepoint_count(alt) <= 30);
    CHECK(alt.back() == '.');
  }

  TEST_CASE("request validation") {
    StubBackend stub;
    CaptionRequest r = stub_request("a.png");
    r.media_type = "image/bmp";
    CHECK(error_code_of([&] { stub.generate_alt(r); }) == "InvalidRequest");
    r = stub_request("a.png");
    r.max_length = 19;
    CHECK(error_code_of([&] { stub.generate_alt(r); }) == "InvalidRequest");
    r.max_length = 1001;
    CHECK(error_code_of([&] { stub.generate_alt(r); }) == "InvalidRequest");
    CHECK(media_type_for_path("x/Y.JPEG") == "image/jpeg");
    CHECK(media_type_for_path("x/y.webp") == "image/webp");
    CHECK_FALSE(media_type_for_path("x/y.bmp").has_value());
  }

  TEST_CASE("candidate validation") {
    CHECK_NOTHROW(validate_candidate({"fine", 0.0, "x"}, 20));
    CHECK_THROWS_AS(validate_candidate({"", 0.5, "x"}, 20), BackendError);
    CHECK_THROWS_AS(validate_candidate({"line\rbreak", 0.5, "x"}, 20), BackendError);
    CHECK_THROWS_AS(validate_candidate({"sep\xE2\x80\xA8x", 0.5, "x"}, 20), BackendError);
    CHECK_THROWS_AS(validate_candidate({"fine", -0.1, "x"}, 20), BackendError);
    CHECK_THROWS_AS(validate_candidate({"fine", std::nan(""), "x"}, 20), BackendError);
    CHECK_THROWS_AS(validate_candidate({std::string(21, 'a'), 0.5, "x"}, 20), BackendError);
    // 20 code points, 40 bytes
    std::string greek;
    for (int i = 0; i < 20; ++i) greek += "\xCE\xB1";
    CHECK_NOTHROW(validate_candidate({greek, 0.5, "x"}, 20));
  }

  TEST_CASE("fit_to_length") {
    CHECK(fit_to_length("short  text", 20) == "short text");
    CHECK(fit_to_length("alpha beta gamma delta epsilon zeta", 20) == "alpha beta gamma.");
    CHECK(fit_to_length("alpha beta, gamma delta", 13) == "alpha beta.");
    const PropertyOutcome r = prop_fit_to_length(500, 7);
    INFO(r.counterexample.value_or(""));
    CHECK_FALSE(r.counterexample.has_value());
  }

  TEST_CASE("base64 test vectors") {
    CHECK(base64_encode("") == "");
    CHECK(base64_encode("f") == "Zg==");
    CHECK(base64_encode("fo") == "Zm8=");
    CHECK(base64_encode("foo") == "Zm9v");
    CHECK(base64_encode("foob") == "Zm9vYg==");
    CHECK(base64_encode("fooba") == "Zm9vYmE=");
    CHECK(base64_encode("foobar") == "Zm9vYmFy");
    CHECK(base64_encode(std::string("\xFF\xFE\x00", 3)) == "//4A");
  }

  TEST_CASE("request bodies") {
    CHECK(caption_request_body(wire_request()) == kExpectedCaptionBody);
    CHECK(embed_request_body({"a b", "caf\xC3\xA9 \\ x"}) == kExpectedEmbedBody);
    CHECK(language_request_body("Hej \"du\"") == "{\"text\":\"Hej \\\"du\\\"\"}");
    CaptionRequest bare = stub_request("a.gif");
    bare.image_bytes = "GIF";
    CHECK(caption_request_body(bare) ==
          "{\"image_base64\":\"R0lG\",\"media_type\":\"image/gif\",\"context\":{\"figcaption\":null,"
          "\"preceding_text\":\"\",\"following_text\":\"\",\"nearest_heading\":null,\"doc_title\":null},"
          "\"max_length\":250,\"language\":null}");
  }

  TEST_CASE("stub embeddings") {
    StubBackend stub;
    const auto same = stub.embed_texts({"a b", "a b"});
    CHECK(same[0] == same[1]);
    const auto disjoint = stub.embed_texts({"a a", "b b"});
    CHECK(metrics::cosine_similarity(disjoint[0], disjoint[1]) == 0.0);
    const auto half = stub.embed_texts({"a b", "a c"});
    CHECK(std::abs(metrics::cosine_similarity(half[0], half[1]) - 0.5) < 1e-12);
    for (const auto& v : stub.embed_texts({"one two two", "three", "Three, one!"})) {
      double norm = 0.0;
      for (double x : v.values) norm += x * x;
      CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-9);
    }
    CHECK(error_code_of([&] { stub.embed_texts({}); }) == "InvalidRequest");
    CHECK(error_code_of([&] { stub.embed_texts({std::string(2001, 'a')}); }) == "InvalidRequest");
  }

  TEST_CASE("remote wire protocol") {
    for (const WireCheck& c : run_wire_checks()) {
      INFO(c.name, ": ", c.detail);
      CHECK(c.passed);
    }
  }

  TEST_CASE("remote language member") {
    MockServer server;
    RemoteBackend client(fast_options(server.url() + "/api/"));
    server.script("/api/v1/language", {{404, ""}});
    CHECK_FALSE(client.detect_language("text").has_value());
    server.script("/api/v1/language", {{200, "{\"lang\":\"sv\",\"confidence\":0.93}"}});
    const auto vote = client.detect_language("Hej");
    REQUIRE(vote.has_value());
    CHECK(vote->lang == "sv");
    CHECK(vote->member == lang::Member::Remote);
    CHECK(server.requests().back().body == "{\"text\":\"Hej\"}");
  }

  TEST_CASE("remote caps requests in flight") {
    MockServer server;
    server.script("/v1/caption", {{200, "{\"alt_text\":\"Slow.\",\"confidence\":0.9}", std::chrono::milliseconds(150)}});
    RemoteOptions options = fast_options(server.url());
    options.max_in_flight = 2;
    RemoteBackend client(options);
    std::vector<std::future<AltCandidate>> calls;
    for (int i = 0; i < 6; ++i) {
      calls.push_back(std::async(std::launch::async, [&client] { return client.generate_alt(wire_request()); }));
    }
    for (auto& f : calls) CHECK(f.get().alt_text == "Slow.");
    CHECK(server.max_concurrent() <= 2);
    CHECK(server.max_concurrent() >= 1);
  }

  TEST_CASE("make_backend") {
    CHECK(make_backend("stub")->id() == "stub");
    CHECK(make_backend("http://localhost:9/x")->id() == "remote:http://localhost:9/x");
    CHECK(error_code_of([] { make_backend("ftp://x"); }) == "InvalidRequest");
    CHECK(error_code_of([] { make_backend("mystery"); }) == "InvalidRequest");
  }
}
