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

#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "altgen/content_docs.hpp"
#include "altgen/embedding.hpp"
#include "altgen/error.hpp"
#include "altgen/lang_detect.hpp"

// Alt-text generation and text embedding behind a small HTTP/JSON protocol.
// Image understanding happens server-side: the client ships image bytes plus
// the extracted textual context. StubBackend is a deterministic offline
// stand-in used by tests and dry runs.
//
//   POST /v1/caption   {"image_base64","media_type","context":{...},"max_length","language"}
//                      -> {"alt_text","confidence"}
//   POST /v1/embed     {"texts":[...]} -> {"embeddings":[[...]]}
//   POST /v1/language  {"text"} -> {"lang","confidence"}        (optional)
namespace altgen::backend {

inline constexpr std::array<std::string_view, 5> kSupportedMediaTypes = {
    "image/jpeg", "image/png", "image/gif", "image/svg+xml", "image/webp"};
inline constexpr int kDefaultMaxLength = 250;
inline constexpr int kMinMaxLength = 20;
inline constexpr int kMaxMaxLength = 1000;
inline constexpr std::size_t kMaxEmbedTextLength = 2000;

enum class BackendErrc {
  BackendUnavailable,
  BackendRejected,
  MalformedResponse,
  CandidateInvalid,
  LengthMismatch,
  InvalidRequest,
};
std::string_view to_string(BackendErrc code);
using BackendError = CodedError<BackendErrc>;

struct CaptionRequest {
  std::string image_bytes;
  std::string media_type;
  content::ContextBundle context;
  int max_length = kDefaultMaxLength;
  std::optional<std::string> language;
  // Container path of the image. Not sent over the wire; the stub names the
  // image after it.
  std::string source_path;
};

struct AltCandidate {
  std::string alt_text;
  double confidence = 0.0;
  std::string backend_id;
  bool operator==(const AltCandidate&) const = default;
};

bool is_supported_media_type(std::string_view media_type);
std::optional<std::string> media_type_for_path(std::string_view path);

void validate_request(const CaptionRequest& request);
void validate_candidate(const AltCandidate& candidate, int max_length);

// Shortens `text` to at most `max_chars` code points, cutting at a word
// boundary and ending with a period.
std::string fit_to_length(std::string_view text, std::size_t max_chars);

// Request bodies, byte-exact as sent.
std::string caption_request_body(const CaptionRequest& request);
std::string embed_request_body(const std::vector<std::string>& texts);
std::string language_request_body(std::string_view text);

std::string base64_encode(std::string_view bytes);

class CaptionBackend {
 public:
  virtual ~CaptionBackend() = default;

  virtual std::string id() const = 0;
  virtual AltCandidate generate_alt(const CaptionRequest& request) = 0;
  virtual std::vector<EmbeddingVector> embed_texts(const std::vector<std::string>& texts) = 0;
  // Remote ensemble member for language identification; nullopt = abstain.
  virtual std::optional<lang::LanguageVote> detect_language(std::string_view /*text*/) {
    return std::nullopt;
  }
};

class StubBackend final : public CaptionBackend {
 public:
  static constexpr double kConfidence = 0.5;
  static constexpr std::size_t kContextWords = 8;

  std::string id() const override { return "stub"; }
  AltCandidate generate_alt(const CaptionRequest& request) override;
  // L2-normalized term-frequency vectors over the sorted vocabulary of the
  // batch.
  std::vector<EmbeddingVector> embed_texts(const std::vector<std::string>& texts) override;
};

struct RemoteOptions {
  std::string url;  // http(s)://host[:port][/base]
  std::optional<std::string> token;
  // Backoff before each retry; retries happen on BackendUnavailable only.
  std::vector<std::chrono::milliseconds> retry_delays{std::chrono::milliseconds(500),
                                                      std::chrono::milliseconds(2000)};
  std::chrono::milliseconds connect_timeout{5000};
  std::chrono::milliseconds read_timeout{60000};
  std::size_t max_in_flight = 4;
};

// Reads ALTGEN_BACKEND_TOKEN from the environment.
RemoteOptions remote_options_from_env(std::string url);

class RemoteBackend final : public CaptionBackend {
 public:
  explicit RemoteBackend(RemoteOptions options);
  ~RemoteBackend() override;

  std::string id() const override { return "remote:" + options_.url; }
  AltCandidate generate_alt(const CaptionRequest& request) override;
  std::vector<EmbeddingVector> embed_texts(const std::vector<std::string>& texts) override;
  std::optional<lang::LanguageVote> detect_language(std::string_view text) override;

 private:
  struct Response {
    int status = 0;
    std::string body;
  };
  Response post(std::string_view endpoint, const std::string& body, bool allow_not_found = false);
  Response post_once(std::string_view endpoint, const std::string& body);

  RemoteOptions options_;
  std::string origin_;     // scheme://host:port
  std::string base_path_;  // path prefix without trailing slash
  std::counting_semaphore<64> in_flight_;
};

// "stub" or an http(s) URL.
std::unique_ptr<CaptionBackend> make_backend(std::string_view name_or_url);

}  // namespace altgen::backend
